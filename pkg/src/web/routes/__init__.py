from src.web.routes.scoring import router

__all__ = ["router"]
