"""
Seeded random number generation.

The stream is fixed to splitmix64 so the same seed produces the same numbers on
every platform. Uniform doubles take the top 53 bits of each output; Gaussians
use Box-Muller on two consecutive uniforms.
"""
import math

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_TWO_POW_53 = float(1 << 53)


def _mix_array(z: np.ndarray) -> np.ndarray:
    """splitmix64 finalizer over a uint64 array (wrapping arithmetic)."""
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


class SeededRng:
    """
    Deterministic splitmix64 generator.

    Single-owner mutable state: never share one instance between threads.
    Because splitmix64 is counter based, the array helpers produce exactly
    the values repeated scalar calls would.
    """

    def __init__(self, seed: int):
        """
        Initialize the generator.

        Args:
            seed: Any integer; reduced modulo 2**64
        """
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit output."""
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def u64_array(self, n: int) -> np.ndarray:
        """Return the next ``n`` outputs as a uint64 array."""
        if n <= 0:
            return np.zeros(0, dtype=np.uint64)
        steps = np.arange(1, n + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            states = np.uint64(self.state) + steps * np.uint64(_GOLDEN)
        self.state = (self.state + n * _GOLDEN) & _MASK64
        return _mix_array(states)

    def uniform(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.next_u64() >> 11) / _TWO_POW_53

    def uniform_array(self, n: int) -> np.ndarray:
        """``n`` uniform doubles in [0, 1)."""
        return (self.u64_array(n) >> np.uint64(11)).astype(np.float64) / _TWO_POW_53

    def gaussian(self) -> float:
        """Standard normal draw (one Box-Muller pair per call, sine branch unused)."""
        u1 = 1.0 - self.uniform()  # (0, 1], keeps log finite
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)

    def gaussian_array(self, n: int) -> np.ndarray:
        """``n`` standard normal draws from the same uniforms ``n`` calls of :meth:`gaussian` use."""
        u = self.uniform_array(2 * n)
        u1 = 1.0 - u[0::2]
        u2 = u[1::2]
        return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)

    def randint(self, low: int, high: int) -> int:
        """Integer in [low, high] inclusive."""
        span = high - low + 1
        return low + min(int(self.uniform() * span), span - 1)

    def exponential(self, mean: float) -> float:
        """Exponential draw with the given mean."""
        return -mean * math.log(1.0 - self.uniform())

    def choice(self, items: list):
        """Pick one element uniformly."""
        return items[self.randint(0, len(items) - 1)]

    def permutation(self, n: int) -> list[int]:
        """Fisher-Yates shuffle of ``range(n)``."""
        order = list(range(n))
        for i in range(n - 1, 0, -1):
            j = self.randint(0, i)
            order[i], order[j] = order[j], order[i]
        return order
