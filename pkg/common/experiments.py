# Copyright (c) 2024 Facenapalm
# 
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# 
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# 
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""
Experiments run by sweep.py. Each experiment turns one grid point and one
seed into one row of the result table; it lives at module level so that a
process pool can pickle it.

The triangle experiment is exploratory: it records whether a transversal
triangle exists in three-block sparse instances, together with the largest
anticomplete pair the greedy search finds. No theorem is claimed for it.
"""

import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from common.bounds import counttree_floor, regime_card, check_regime
from common.coherent import find_rainbow_star, find_transversal_path
from common.generators import gen_ordered_star_counterexample, gen_sparse_cohesive_blockade, gen_star_free_blockade
from common.graphcore import CopyKind, Pattern
from common.metrics import check_manyedges_premise_conclusion, greedy_anticomplete_pair
from common.oracle import BudgetExceeded, SearchBudget, count_copies, find_copy
from common.utils import format_rational

logger = logging.getLogger(__name__)

SCHEMA = "v1"

ORACLE_BUDGET = SearchBudget(max_tuples=2_000_000)
PREMISE_BUDGET = 200_000

@dataclass(frozen=True)
class Experiment:
    name: str
    parameters: Tuple[str, ...]
    defaults: Dict[str, object]
    columns: Tuple[str, ...]
    body: Callable[[Dict[str, object], int], Dict[str, object]]

def _path(point, seed):
    blockade = gen_sparse_cohesive_blockade(point["k"], point["W"], point["eps"], seed).blockade
    outcome = find_transversal_path(blockade, point["eps"])
    return {"succeeded": outcome.succeeded, "failure_stage": outcome.failure_stage or ""}

def _star(point, seed):
    blocks = 2 ** (point["k"] - 1) + 1
    blockade = gen_sparse_cohesive_blockade(blocks, point["W"], point["eps"], seed).blockade
    outcome = find_rainbow_star(blockade, point["k"], point["eps"])
    return {"succeeded": outcome.succeeded, "failure_stage": outcome.failure_stage or ""}

def _star_free(point, seed):
    blockade = gen_star_free_blockade(point["k"], point["W"], point["eps"], seed).blockade
    result = find_copy(blockade, Pattern.star(point["k"]), CopyKind.RAINBOW, ORACLE_BUDGET)
    return {"verdict": result.status.value, "visited": result.visited}

def _ordered_star(point, seed):
    instance = gen_ordered_star_counterexample(point["t"], point["c"], point["eps"], point["n"], seed, relaxed=True)
    pattern = Pattern.star(point["t"], centre_last=True, ordered=True)
    result = find_copy(instance.blockade, pattern, CopyKind.ORDERED, ORACLE_BUDGET)
    return {"verdict": result.status.value, "visited": result.visited}

def _triangle(point, seed):
    blockade = gen_sparse_cohesive_blockade(3, point["W"], point["eps"], seed).blockade
    result = find_copy(blockade, Pattern.cycle(3), CopyKind.TRANSVERSAL, ORACLE_BUDGET)
    best = None
    for first in range(3):
        for second in range(first + 1, 3):
            left, right = greedy_anticomplete_pair(blockade.graph, blockade.block(first), blockade.block(second))
            if not left or not right:
                continue
            sizes = tuple(sorted((left.bit_count(), right.bit_count()), reverse=True))
            if best is None or (sizes[1], sizes[0]) > (best[1], best[0]):
                best = sizes
    larger, smaller = best if best is not None else (None, None)
    return {"verdict": result.status.value, "pair_larger": larger, "pair_smaller": smaller}

def _manyedges(point, seed):
    blockade = gen_sparse_cohesive_blockade(2, point["W"], point["eps"], seed).blockade
    report = check_manyedges_premise_conclusion(blockade, point["eps"], point["c"], blockade.block(0),
                                                PREMISE_BUDGET)
    premises = "" if report.premises_verified is None else report.premises_verified
    return {"premises_verified": premises, "holds": report.holds, "count": report.count}

def _tree_count(point, seed):
    k = point["k"]
    blockade = gen_sparse_cohesive_blockade(k, point["W"], point["eps"], seed).blockade
    c = point["c"] if point["c"] is not None else Fraction(1, k - 1)
    count = count_copies(blockade, Pattern.path(k, ordered=True), CopyKind.ORDERED, ORACLE_BUDGET)
    verdict = check_regime(blockade, regime_card("tree-count", k=k, c=c), PREMISE_BUDGET)
    floor = counttree_floor(k, c, blockade.width)
    premises = "" if verdict.satisfied is None else verdict.satisfied
    return {"count": count, "floor": floor, "bound_holds": count >= floor, "premises_verified": premises}

EXPERIMENTS = {
    experiment.name: experiment for experiment in (
        Experiment("path", ("k", "W", "eps"), {"k": 3, "W": 20, "eps": Fraction(1, 4)},
                   ("succeeded", "failure_stage"), _path),
        Experiment("star", ("k", "W", "eps"), {"k": 2, "W": 20, "eps": Fraction(1, 27)},
                   ("succeeded", "failure_stage"), _star),
        Experiment("star-free", ("k", "W", "eps"), {"k": 3, "W": 8, "eps": Fraction(1, 2)},
                   ("verdict", "visited"), _star_free),
        Experiment("ordered-star", ("t", "c", "n", "eps"), {"t": 3, "c": Fraction(1, 2), "n": 8, "eps": Fraction(1, 2)},
                   ("verdict", "visited"), _ordered_star),
        Experiment("triangle", ("W", "eps"), {"W": 24, "eps": Fraction(1)},
                   ("verdict", "pair_larger", "pair_smaller"), _triangle),
        Experiment("manyedges", ("W", "eps", "c"), {"W": 12, "eps": Fraction(1, 4), "c": Fraction(1, 2)},
                   ("premises_verified", "holds", "count"), _manyedges),
        Experiment("tree-count", ("k", "W", "eps", "c"), {"k": 3, "W": 8, "eps": Fraction(1, 2), "c": None},
                   ("count", "floor", "bound_holds", "premises_verified"), _tree_count),
    )
}

def header(experiment: Experiment, timing: bool = False) -> List[str]:
    columns = ["experiment", *experiment.parameters, "seed", *experiment.columns, "error"]
    if timing:
        columns.append("seconds")
    return columns

def expand_grid(experiment: Experiment, values: Dict[str, Sequence[object]], seeds: Sequence[int]
                ) -> List[Tuple[Dict[str, object], int]]:
    """(point, seed) pairs in grid order: parameters in declared order, seeds innermost."""
    axes = [list(values[name]) if name in values else [experiment.defaults[name]] for name in experiment.parameters]
    if not seeds or any(not axis for axis in axes):
        raise ValueError("empty parameter grid")
    points: List[Dict[str, object]] = [{}]
    for name, axis in zip(experiment.parameters, axes):
        points = [{**point, name: value} for point in points for value in axis]
    return [(point, seed) for point in points for seed in seeds]

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)

def run_row(task: Tuple[str, Dict[str, object], int, bool]) -> List[str]:
    """Run one (point, seed) of an experiment; failures go into the error column."""
    name, point, seed, timing = task
    experiment = EXPERIMENTS[name]
    started = time.perf_counter()
    try:
        result = experiment.body(point, seed)
        error = ""
    except (RuntimeError, ValueError, BudgetExceeded) as exception:
        logger.warning("%s row %s seed %d failed: %s", name, point, seed, exception)
        result = {}
        error = f"{exception.__class__.__name__}: {exception}"
    row = [name] + [_cell(point[key]) for key in experiment.parameters] + [str(seed)]
    row += [_cell(result.get(column)) for column in experiment.columns] + [error]
    if timing:
        row.append(f"{time.perf_counter() - started:.3f}")
    return row
