"""Compensated float accumulation for long partial-sum runs."""

from __future__ import annotations

import math

import numpy as np


class NeumaierSum:
    """Running sum with Neumaier's correction term.

    Blocks added with :meth:`add_block` are first reduced with ``math.fsum``
    (correctly rounded), so the only error left is from combining block totals.
    """

    def __init__(self):
        self.sum = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        t = self.sum + value
        if abs(self.sum) >= abs(value):
            self.carry += (self.sum - t) + value
        else:
            self.carry += (value - t) + self.sum
        self.sum = t

    def add_block(self, values: np.ndarray) -> None:
        if len(values):
            self.add(math.fsum(values))

    @property
    def value(self) -> float:
        return self.sum + self.carry


def checkpoint_sums(terms: np.ndarray, checkpoints: list[int]) -> list[float]:
    """Partial sums of ``terms[1:Q+1]`` for each Q in increasing ``checkpoints``.

    ``terms`` is indexed by q with slot 0 ignored.
    """
    acc = NeumaierSum()
    out = []
    prev = 0
    for Q in checkpoints:
        acc.add_block(terms[prev + 1 : Q + 1])
        prev = Q
        out.append(acc.value)
    return out
