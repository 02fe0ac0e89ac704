"""Exhaustive theorem suites driven by the command line.

Each suite enumerates every symmetric category over a finite quantale up to
an object bound (raw enumeration in a documented deterministic order) and
checks one named equivalence:

    t36   hypercomplete == every one-point extension retracts
          == every in-bound extension problem is solvable
    l43   the tight span of every category is hypercomplete
    t44   the embedding x |-> hom(-, x) into the tight span is fully
          faithful and (co)dense, its graph columns are tight, transport
          along it identifies the two tight spans, and tight presheaves
          are maximal among ambient ones
    t54   a fully faithful functor is dense exactly when the bounded
          essentiality brute force says it is essential

The in-bound extension family for t36 consists of, for each candidate X:
the identity of X along the inclusion into every one-point extension of X,
and the inclusion W -> X along the inclusion of W into every one-point
extension of W, for every full subcategory W of X.  This family is rich
enough to refute injectivity whenever hypercompleteness fails (the failing
column itself builds a failing extension) while staying desk-scale.

Suites shard deterministically: shard k of W takes every W-th enumeration
index starting at k, and results merge by index, so worker count never
changes a report.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

from .categories import QCategory, QFunctor, graph, yoneda
from .diagonals import diagonal_quantaloid
from .errors import BoundExceededError
from .hull import (
    all_functors,
    enumerate_ambient,
    enumerate_symmetric_categories,
    extend_along,
    find_one_point_retraction,
    full_subcategory,
    inclusion_functor,
    is_codense,
    is_dense,
    is_essential_bruteforce,
    is_fully_faithful,
    is_hypercomplete,
    is_tight_column,
    one_point_extensions,
    tight_span,
    tight_span_restriction,
)
from .quantale import FiniteQuantale

__all__ = ["DOCUMENTED_BOUNDS", "run_suite", "worker_count"]

DOCUMENTED_BOUNDS = {"t36": 3, "l43": 3, "t44": 3, "t54": 2}


def worker_count() -> int:
    raw = os.environ.get("ENRITCH_WORKERS", "1")
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def _sharded(
    items: Sequence, work: Callable, workers: int
) -> list:
    """Apply ``work`` to every (index, item), merging shard results by index."""
    if workers <= 1 or len(items) <= 1:
        return [work(i, item) for i, item in enumerate(items)]

    def run_shard(k: int) -> list:
        return [
            (i, work(i, items[i])) for i in range(k, len(items), workers)
        ]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        shards = list(pool.map(run_shard, range(workers)))
    merged = [None] * len(items)
    for shard in shards:
        for i, result in shard:
            merged[i] = result
    return merged


def _t36_single(x_cat: QCategory, strict: bool) -> dict:
    hyper = is_hypercomplete(x_cat, strict=strict).holds

    retract = True
    for ext in one_point_extensions(x_cat):
        if find_one_point_retraction(x_cat, ext) is None:
            retract = False
            break

    inject = True
    identity = QFunctor(x_cat, x_cat, tuple(x_cat.names))
    for ext in one_point_extensions(x_cat):
        if extend_along(identity, inclusion_functor(x_cat, ext)) is None:
            inject = False
            break
    if inject:
        for size in range(len(x_cat)):
            for names in itertools.combinations(x_cat.names, size):
                sub = full_subcategory(x_cat, names)
                into_x = inclusion_functor(sub, x_cat)
                for ext in one_point_extensions(sub):
                    if extend_along(into_x, inclusion_functor(sub, ext)) is None:
                        inject = False
                        break
                if not inject:
                    break
            if not inject:
                break

    return {
        "category": x_cat.to_dict(),
        "hypercomplete": hyper,
        "one_point_retracts": retract,
        "extensions_solvable": inject,
        "agree": hyper == retract == inject,
    }


def _l43_single(x_cat: QCategory, strict: bool) -> dict:
    span = tight_span(x_cat)
    result = is_hypercomplete(span.category, strict=strict)
    return {
        "category": x_cat.to_dict(),
        "tight_members": len(span.members),
        "span_hypercomplete": result.holds,
        "agree": result.holds,
    }


def _t44_single(x_cat: QCategory, strict: bool) -> dict:
    span = tight_span(x_cat)
    assignment = []
    embedded = True
    for name in x_cat.names:
        column = yoneda(x_cat, name)
        idx = span.index_of(column.values, column.q)
        if idx is None:
            embedded = False
            break
        assignment.append(f"t{idx}")

    fully_faithful = dense = codense = columns_tight = transport_ok = maximal = False
    if embedded:
        embedding = QFunctor(x_cat, span.category, tuple(assignment))
        fully_faithful = is_fully_faithful(embedding)
        dense = is_dense(embedding)
        codense = is_codense(embedding)
        # Graph columns land in the tight span of the domain.
        gr = graph(embedding).entries
        columns_tight = all(
            is_tight_column(
                x_cat,
                span.members[j].q,
                tuple(gr[i][j] for i in range(len(x_cat))),
            )
            for j in range(len(span.members))
        )
        transport = tight_span_restriction(embedding)
        transport_ok = transport.dense and transport.ok
        dq = x_cat.quantaloid
        maximal = True
        ambient = enumerate_ambient(x_cat)
        for lam in span.members:
            for mu in ambient:
                if mu.q != lam.q:
                    continue
                if all(
                    dq.leq(lam.values[i], mu.values[i]) for i in range(len(x_cat))
                ) and mu.values != lam.values:
                    maximal = False
    ok = all(
        [embedded, fully_faithful, dense, codense, columns_tight, transport_ok, maximal]
    )
    return {
        "category": x_cat.to_dict(),
        "yoneda_in_span": embedded,
        "fully_faithful": fully_faithful,
        "dense": dense,
        "codense": codense,
        "graph_columns_tight": columns_tight,
        "transport_isomorphism": transport_ok,
        "tight_maximal_in_ambient": maximal,
        "agree": ok,
    }


def _t54_single(pair: tuple[QCategory, QFunctor], bound: int) -> dict:
    _, f = pair
    dense = is_dense(f)
    essential = is_essential_bruteforce(f, max_objects=bound + 1).essential
    return {
        "domain": f.domain.to_dict(),
        "codomain": f.codomain.to_dict(),
        "map": f.as_dict(),
        "dense": dense,
        "essential": essential,
        "agree": dense == essential,
    }


def run_suite(
    theorem: str,
    quantale: FiniteQuantale,
    bound: int,
    strict: bool = True,
    workers: int | None = None,
) -> dict:
    """Run one named suite and produce a structured, byte-stable report."""
    if theorem not in DOCUMENTED_BOUNDS:
        raise ValueError(f"unknown suite {theorem!r}")
    maximum = DOCUMENTED_BOUNDS[theorem]
    if bound > maximum:
        raise BoundExceededError(
            f"suite {theorem} is documented up to bound {maximum}, got {bound}"
        )
    if workers is None:
        workers = worker_count()
    dq = diagonal_quantaloid(quantale)

    if theorem == "t54":
        cats = list(enumerate_symmetric_categories(dq, bound))
        items: list = []
        for x_cat in cats:
            for y_cat in cats:
                for f in all_functors(x_cat, y_cat):
                    if is_fully_faithful(f):
                        items.append((x_cat, f))
        results = _sharded(items, lambda i, it: _t54_single(it, bound), workers)
        label = "functors"
    else:
        single = {"t36": _t36_single, "l43": _l43_single, "t44": _t44_single}[theorem]
        items = list(enumerate_symmetric_categories(dq, bound))
        results = _sharded(items, lambda i, it: single(it, strict), workers)
        label = "categories"

    discrepancies = [r for r in results if not r["agree"]]
    return {
        "check": theorem,
        "result": not discrepancies,
        "witness": discrepancies[0] if discrepancies else None,
        "quantale": quantale.name,
        "bound": bound,
        "strict_typing": strict,
        label: len(results),
        "discrepancies": len(discrepancies),
    }
