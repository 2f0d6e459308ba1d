"""
Analytic gradients of the weighted binary cross-entropy loss.

Walks a ``ForwardTrace`` in reverse, reusing its dropout masks. The positional
table is fixed and receives no gradient.
"""
import numpy as np

from src.core.exceptions import TraceError
from src.core.model.params import Gradients, ModelParams, head_name, output_name
from src.core.model.transformer import BlockTrace, ForwardTrace
from src.core.numeric import Matrix
from src.models.config import Pooling


def _logit_gradient(probability: float, label: int, pos_weight: float) -> float:
    """d/dlogit of -[w*y*ln(p) + (1-y)*ln(1-p)] with p = sigmoid(logit)."""
    return probability * (pos_weight * label + 1 - label) - pos_weight * label


def _attention_backward(block: BlockTrace, params: ModelParams, b: int,
                        d_out: Matrix, grads: Gradients) -> Matrix:
    """Backprop through one block; returns the gradient w.r.t. its input."""
    cfg = params.config
    d_in = d_out.copy()  # residual path

    d_projected = d_out * block.mask if block.mask is not None else d_out
    grads[output_name(b)] = block.concat.T @ d_projected
    d_concat = d_projected @ params.w_o(b).T

    h = block.input
    scale = 1.0 / np.sqrt(cfg.d_k)
    for i, head in enumerate(block.heads):
        d_head = d_concat[:, i * cfg.d_k:(i + 1) * cfg.d_k]
        d_v = head.weights.T @ d_head
        d_weights = d_head @ head.v.T
        # softmax Jacobian applied row by row
        d_scores = head.weights * (d_weights - np.sum(d_weights * head.weights, axis=1, keepdims=True))
        d_scores *= scale
        d_q = d_scores @ head.k
        d_k = d_scores.T @ head.q

        w_q, w_k, w_v = params.head(b, i)
        grads[head_name(b, i, "W_Q")] = h.T @ d_q
        grads[head_name(b, i, "W_K")] = h.T @ d_k
        grads[head_name(b, i, "W_V")] = h.T @ d_v
        d_in += d_q @ w_q.T + d_k @ w_k.T + d_v @ w_v.T

    return d_in


def backward(
    trace: ForwardTrace,
    params: ModelParams,
    label: int,
    pos_weight: float = 1.0,
) -> Gradients:
    """
    Gradients of the BCE loss w.r.t. every learnable tensor.

    Args:
        trace: Trace from :func:`forward` on ``params``
        params: Same parameters the trace was produced with
        label: Window label, 0 or 1
        pos_weight: Positive-class loss multiplier

    Returns:
        Dict of gradients keyed and shaped like ``params.tensors``

    Raises:
        TraceError: If the trace is incomplete or from another architecture
    """
    cfg = params.config
    clf = trace.classifier
    if clf is None or len(trace.blocks) != cfg.n_blocks:
        raise TraceError("trace is missing classifier output or attention blocks")
    if any(len(block.heads) != cfg.h for block in trace.blocks):
        raise TraceError("trace head count does not match the parameters")

    grads: Gradients = {}
    d_logit = _logit_gradient(clf.probability, label, pos_weight)

    # classification head
    grads["b_2"] = np.array([[d_logit]])
    grads["W_2"] = clf.z.T * d_logit
    d_z = params["W_2"].T * d_logit
    if clf.mask is not None:
        d_z = d_z * clf.mask
    d_z_pre = d_z * (clf.z_pre > 0)
    grads["b_1"] = d_z_pre.copy()
    grads["W_1"] = clf.pooled.T @ d_z_pre
    d_pooled = d_z_pre @ params["W_1"].T

    if cfg.pooling == Pooling.MEAN:
        d_hidden = np.repeat(d_pooled / cfg.T, cfg.T, axis=0)
    else:
        d_hidden = np.zeros((cfg.T, cfg.d_h))
        d_hidden[-1, :] = d_pooled[0]

    for b in reversed(range(cfg.n_blocks)):
        d_hidden = _attention_backward(trace.blocks[b], params, b, d_hidden, grads)

    grads["W_e"] = trace.x.T @ d_hidden

    return {name: grads[name] for name in params.tensors}
