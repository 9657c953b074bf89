"""Operation accounting.

One op is one FFT butterfly, one Goertzel sample-iteration, or one CRT pair
reconstruction.  FFT work is charged by the idealized butterfly model
``ceil(n * log2(n))`` regardless of how the transform is realized internally,
so measured totals line up with the closed-form cost predictors.
"""

import math
from dataclasses import dataclass


def butterfly_model(n: int) -> int:
    """Butterfly count charged for one length-``n`` transform."""
    if n < 2:
        return 0
    return math.ceil(n * math.log2(n))


@dataclass
class OpCounter:
    fft_butterflies: int = 0
    goertzel_iterations: int = 0
    crt_pair_ops: int = 0

    @property
    def total(self) -> int:
        return self.fft_butterflies + self.goertzel_iterations + self.crt_pair_ops

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(
            self.fft_butterflies + other.fft_butterflies,
            self.goertzel_iterations + other.goertzel_iterations,
            self.crt_pair_ops + other.crt_pair_ops,
        )

    def merge(self, other: "OpCounter") -> None:
        """Accumulate ``other`` into this counter (componentwise addition)."""
        self.fft_butterflies += other.fft_butterflies
        self.goertzel_iterations += other.goertzel_iterations
        self.crt_pair_ops += other.crt_pair_ops

    def copy(self) -> "OpCounter":
        return OpCounter(self.fft_butterflies, self.goertzel_iterations, self.crt_pair_ops)

    def as_dict(self) -> dict:
        return {
            "fft_butterflies": int(self.fft_butterflies),
            "goertzel_iterations": int(self.goertzel_iterations),
            "crt_pair_ops": int(self.crt_pair_ops),
            "total": int(self.total),
        }
