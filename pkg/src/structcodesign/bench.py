"""Wall-clock scaling of the polynomial solver."""

from __future__ import annotations

import statistics
import time
from typing import Iterable

from .codesign import solve_codesign
from .errors import Infeasible
from .generator import GenSpec, generate


def bench_instance(n: int, seed: int):
    # Sparse tree-backbone dynamics usually lack a state cycle cover, so the
    # extended (n + p + m)-square assignment is the one being timed.
    return generate(
        GenSpec(
            n=n,
            p=max(1, n // 10),
            m=max(1, n // 10),
            edge_density=min(1.0, 2.0 / n),
            io_density=0.1,
            backbone="tree",
            seed=seed,
        )
    )


def run_bench(sizes: Iterable[int], seed: int = 0, repeats: int = 3) -> list[tuple[int, float]]:
    """Median runtime in milliseconds of ``solve_codesign`` per state dimension."""
    rows = []
    for n in sizes:
        times = []
        for rep in range(repeats):
            inst = bench_instance(n, seed + rep)
            t0 = time.perf_counter()
            try:
                solve_codesign(inst)
            except Infeasible:
                pass
            times.append((time.perf_counter() - t0) * 1e3)
        rows.append((n, statistics.median(times)))
    return rows


def to_csv(rows: list[tuple[int, float]]) -> str:
    lines = ["size,median_ms"] + [f"{n},{ms:.3f}" for n, ms in rows]
    return "\n".join(lines) + "\n"
