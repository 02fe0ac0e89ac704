"""Tight spans, hypercompleteness, injectivity and density checks.

For a symmetric category X the ambient set consists of the presheaves mu
with mu deg . mu <= hom; the tight ones additionally satisfy
mu deg = hom <swarrow> mu and are exactly the maximal ambient presheaves.
The tight span collects all tight presheaves into a new symmetric category
whose hom is the presheaf-category hom.

Hypercompleteness asks every self-compatible column to admit a witness
object.  Because the admissible columns of a fixed type form a
downward-closed set whose maximal elements are exactly the tight columns,
it suffices to search witnesses for tight columns only; this reduction is
what makes the exhaustive checks below tractable, and the test suite
cross-validates it against the naive all-columns scan on small instances.

Typing of the witness is subtle: the default ("strict") requires the
witness object's type to equal the column's type, which is what makes the
injectivity equivalences hold.  The lax elementwise reading is available
behind a flag for cross-checking the partial-metric formulation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .categories import (
    Presheaf,
    QCategory,
    QFunctor,
    _distributor_holds,
    cograph,
    enumerate_presheaves,
    graph,
    is_fully_faithful,
    is_symmetric,
    presheaf_hom,
    require_functor,
    require_valid,
    underlying_order,
    validate_category,
    validate_functor,
)
from .diagonals import DiagonalQuantaloid
from .errors import (
    BoundExceededError,
    PreconditionError,
    ShapeMismatchError,
    UnsupportedQuantaleError,
)
from .relations import QRelation, TypedSet, rel_residual

__all__ = [
    "is_ambient",
    "is_tight",
    "is_tight_column",
    "column_admissible",
    "tighten",
    "TightSpan",
    "tight_span",
    "HypercompleteResult",
    "is_hypercomplete",
    "extend_along",
    "find_one_point_retraction",
    "one_point_extensions",
    "extension_from_presheaf",
    "full_subcategory",
    "inclusion_functor",
    "functor_compose",
    "all_functors",
    "is_dense",
    "is_codense",
    "EssentialResult",
    "is_essential_bruteforce",
    "TransportResult",
    "tight_span_restriction",
    "enumerate_symmetric_categories",
    "enumerate_ambient",
]


def _require_finite(c: QCategory) -> None:
    if c.quantaloid._homs is None:
        raise UnsupportedQuantaleError(
            "this operation enumerates hom sets and needs a finite quantale;"
            " use the partial-metric module for the extended-rational case"
        )


def _require_symmetric(c: QCategory) -> None:
    require_valid(c)
    if not is_symmetric(c):
        raise PreconditionError("the category must be symmetric")


# -- membership -------------------------------------------------------------


def column_admissible(c: QCategory, q, values: Sequence) -> bool:
    """mu deg . mu <= hom for a raw column of type q (no distributor needed)."""
    dq = c.quantaloid
    types = c.objects.types
    hom = c.hom.entries
    n = len(types)
    for x in range(n):
        for z in range(n):
            composed = dq.compose(values[x], q, dq.involve(values[z]))
            if not dq.leq(composed, hom[x][z]):
                return False
    return True


def is_ambient(c: QCategory, mu: Presheaf) -> bool:
    """Membership of the ambient set: an admissible presheaf."""
    if mu.base != c:
        raise ShapeMismatchError("presheaf does not live on this category")
    return column_admissible(c, mu.q, mu.values)


def _tight_residual(c: QCategory, q, values: Sequence) -> tuple:
    """The column z |-> (hom <swarrow> mu)(z), valued in hom(q, |z|)."""
    dq = c.quantaloid
    types = c.objects.types
    hom = c.hom.entries
    n = len(types)
    return tuple(
        dq.hom_meet(
            q,
            types[z],
            (dq.limpl(q, types[z], values[x], hom[x][z]) for x in range(n)),
        )
        for z in range(n)
    )


def _tight_step(c: QCategory, q, values: Sequence) -> tuple:
    """One application of the tightness operator (involution of the residual)."""
    dq = c.quantaloid
    return tuple(dq.involve(r) for r in _tight_residual(c, q, values))


def is_tight_column(c: QCategory, q, values: Sequence) -> bool:
    """mu deg = hom <swarrow> mu for a raw column; such a column is
    automatically a presheaf (asserted)."""
    dq = c.quantaloid
    residual = _tight_residual(c, q, values)
    holds = all(
        dq.involve(values[z]) == residual[z] for z in range(len(values))
    )
    if holds:
        assert _distributor_holds(c, q, values), (
            "a column satisfying the tight equation must be a presheaf"
        )
    return holds


def is_tight(c: QCategory, mu: Presheaf) -> bool:
    if mu.base != c:
        raise ShapeMismatchError("presheaf does not live on this category")
    return is_tight_column(c, mu.q, mu.values)


# -- tightening -------------------------------------------------------------


def tighten(c: QCategory, mu: Presheaf) -> Presheaf:
    """A maximal (tight) presheaf above an ambient one.

    Repeatedly finds the first object z where the tight equation fails and
    joins in the augmentation column through z; each step strictly increases
    the presheaf, so the loop terminates on finite quantales.
    """
    _require_finite(c)
    if not is_ambient(c, mu):
        raise PreconditionError("tighten needs an ambient presheaf")
    dq = c.quantaloid
    types = c.objects.types
    hom = c.hom.entries
    n = len(types)
    q = mu.q
    values = tuple(mu.values)
    max_steps = n * max(len(h) for h in dq._homs.values()) + 1 if n else 1
    for _ in range(max_steps):
        residual = _tight_residual(c, q, values)
        stale = None
        for z in range(n):
            if dq.involve(values[z]) != residual[z]:
                stale = z
                break
        if stale is None:
            result = Presheaf(c, q, values)
            assert is_ambient(c, result), "tightening left the ambient set"
            return result
        z = stale
        # Augmentation through z: join mu with (mu deg <searrow> hom(z, -)) . hom(-, z).
        bound = dq.hom_meet(
            types[z],
            q,
            (
                dq.rimpl(types[z], q, dq.involve(values[w]), hom[z][w])
                for w in range(n)
            ),
        )
        new_values = tuple(
            dq.hom_join(
                types[x],
                q,
                (values[x], dq.compose(hom[x][z], types[z], bound)),
            )
            for x in range(n)
        )
        assert new_values != values and all(
            dq.leq(values[x], new_values[x]) for x in range(n)
        ), "augmentation must strictly increase the presheaf"
        values = new_values
    raise AssertionError("tightening failed to converge within its step bound")


# -- tight span -------------------------------------------------------------


def _enumerate_tight_columns(c: QCategory, q) -> Iterator[tuple]:
    """All tight columns of type q, in lexicographic hom order.

    The search space is first narrowed to the interval between the least
    and greatest fixed points of the squared tightness operator (the
    operator itself is antitone, so its square is monotone and every tight
    column lies in that interval), then walked depth-first with pairwise
    admissibility pruning.
    """
    dq = c.quantaloid
    types = c.objects.types
    hom = c.hom.entries
    n = len(types)
    if n == 0:
        yield ()
        return

    def f2_limit(start: tuple) -> tuple:
        current = start
        for _ in range(len(dq.quantale.elements) * n * 2 + 4):
            nxt = _tight_step(c, q, _tight_step(c, q, current))
            if nxt == current:
                return current
            current = nxt
        raise AssertionError("squared tightness operator failed to converge")

    lo = f2_limit(tuple(dq.hom_bottom(t, q) for t in types))
    hi = f2_limit(tuple(dq.hom_top(t, q) for t in types))
    domains = [
        tuple(
            v
            for v in dq.hom(types[z], q)
            if dq.leq(lo[z], v) and dq.leq(v, hi[z])
        )
        for z in range(n)
    ]

    partial: list = []

    def compatible(z: int, v) -> bool:
        vv = dq.involve(v)
        if not dq.leq(dq.compose(v, q, vv), hom[z][z]):
            return False
        for x in range(z):
            if not dq.leq(dq.compose(partial[x], q, vv), hom[x][z]):
                return False
            if not dq.leq(dq.compose(v, q, dq.involve(partial[x])), hom[z][x]):
                return False
        return True

    def walk(z: int) -> Iterator[tuple]:
        if z == n:
            values = tuple(partial)
            if values == _tight_step(c, q, values):
                yield values
            return
        for v in domains[z]:
            if compatible(z, v):
                partial.append(v)
                yield from walk(z + 1)
                partial.pop()

    yield from walk(0)


@dataclass(frozen=True)
class TightSpan:
    """The tight presheaves of a symmetric category, also viewed as a category."""

    base: QCategory
    members: tuple[Presheaf, ...]
    category: QCategory

    def index_of(self, values: tuple, q) -> int | None:
        for i, mu in enumerate(self.members):
            if mu.q == q and mu.values == values:
                return i
        return None


def tight_span(c: QCategory) -> TightSpan:
    """Enumerate all tight presheaves and materialize them as a category."""
    _require_finite(c)
    _require_symmetric(c)
    dq = c.quantaloid
    members: list[Presheaf] = []
    for q in dq.objects():
        for values in _enumerate_tight_columns(c, q):
            members.append(Presheaf(c, q, values))
    names = tuple(f"t{i}" for i in range(len(members)))
    carrier = TypedSet(dq, names, tuple(mu.q for mu in members))
    entries = tuple(
        tuple(presheaf_hom(mu, nu) for nu in members) for mu in members
    )
    category = QCategory(carrier, QRelation(carrier, carrier, entries))
    assert is_symmetric(category), "the tight span must be symmetric"
    report = validate_category(category)
    assert report.valid, f"the tight span must be a category: {report.to_dict()}"
    return TightSpan(base=c, members=tuple(members), category=category)


# -- hypercompleteness -------------------------------------------------------


@dataclass(frozen=True)
class HypercompleteResult:
    holds: bool
    witness: Presheaf | None
    tight_columns_checked: int

    def to_dict(self) -> dict:
        return {
            "check": "hypercomplete",
            "result": self.holds,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "tight_columns_checked": self.tight_columns_checked,
        }


def is_hypercomplete(c: QCategory, strict: bool = True) -> HypercompleteResult:
    """Does every admissible column admit a witness object?

    Only tight columns are scanned; every admissible column lies below a
    tight one of the same type, and the witness condition is downward
    closed, so the answer agrees with the all-columns definition.
    """
    _require_finite(c)
    _require_symmetric(c)
    dq = c.quantaloid
    types = c.objects.types
    hom = c.hom.entries
    n = len(types)
    checked = 0
    for q in dq.objects():
        for values in _enumerate_tight_columns(c, q):
            checked += 1
            found = False
            for z in range(n):
                if strict:
                    if types[z] != q:
                        continue
                    if all(dq.leq(values[x], hom[x][z]) for x in range(n)):
                        found = True
                        break
                else:
                    if all(dq.leq(values[x], hom[x][z]) for x in range(n)):
                        found = True
                        break
            if not found:
                return HypercompleteResult(False, Presheaf(c, q, values), checked)
    return HypercompleteResult(True, None, checked)


# -- extensions and retractions ----------------------------------------------


def functor_compose(g: QFunctor, f: QFunctor) -> QFunctor:
    if f.codomain != g.domain:
        raise ShapeMismatchError("functors are not composable")
    return QFunctor(f.domain, g.codomain, tuple(g(y) for y in f.assignment))


def full_subcategory(c: QCategory, names: Sequence[str]) -> QCategory:
    indices = [c.objects.index(name) for name in names]
    carrier = TypedSet(
        c.quantaloid,
        tuple(c.names[i] for i in indices),
        tuple(c.objects.types[i] for i in indices),
    )
    entries = tuple(
        tuple(c.hom.entries[i][j] for j in indices) for i in indices
    )
    return QCategory(carrier, QRelation(carrier, carrier, entries))


def inclusion_functor(sub: QCategory, sup: QCategory) -> QFunctor:
    f = QFunctor(sub, sup, tuple(sub.names))
    require_functor(f)
    return f


def all_functors(domain: QCategory, codomain: QCategory) -> Iterator[QFunctor]:
    """Every valid functor, in lexicographic assignment order."""
    candidates = []
    for t in domain.objects.types:
        matching = tuple(
            name
            for name, s in zip(codomain.names, codomain.objects.types)
            if s == t
        )
        if not matching:
            return
        candidates.append(matching)
    for assignment in itertools.product(*candidates):
        f = QFunctor(domain, codomain, assignment)
        if validate_functor(f).valid:
            yield f


def extend_along(f: QFunctor, g: QFunctor) -> QFunctor | None:
    """Search an h with h . g isomorphic to f, for fully faithful g.

    Returns the first such functor in lexicographic order, or None when the
    exhaustive search over type-preserving maps fails.
    """
    if f.domain != g.domain:
        raise ShapeMismatchError("f and g must share their domain")
    for cat in (f.domain, f.codomain, g.codomain):
        _require_symmetric(cat)
    _require_finite(f.codomain)
    require_functor(f)
    if not is_fully_faithful(g):
        raise PreconditionError("g must be fully faithful")

    y_cat, z_cat = g.codomain, f.codomain
    dq = y_cat.quantaloid
    iso = underlying_order(z_cat)
    required_class: list[int | None] = [None] * len(y_cat)
    for x_i, y_name in enumerate(g.assignment):
        y_i = y_cat.objects.index(y_name)
        cls = iso.class_index(f.assignment[x_i])
        if required_class[y_i] is None:
            required_class[y_i] = cls
        elif required_class[y_i] != cls:
            return None

    z_names = z_cat.names
    z_types = z_cat.objects.types
    candidates = []
    for y_i, t in enumerate(y_cat.objects.types):
        pool = tuple(
            j
            for j in range(len(z_names))
            if z_types[j] == t
            and (required_class[y_i] is None or iso.class_index(z_names[j]) == required_class[y_i])
        )
        if not pool:
            return None
        candidates.append(pool)

    y_hom = y_cat.hom.entries
    z_hom = z_cat.hom.entries
    partial: list[int] = []

    def compatible(y_i: int, j: int) -> bool:
        if not dq.leq(y_hom[y_i][y_i], z_hom[j][j]):
            return False
        for w in range(y_i):
            if not dq.leq(y_hom[w][y_i], z_hom[partial[w]][j]):
                return False
            if not dq.leq(y_hom[y_i][w], z_hom[j][partial[w]]):
                return False
        return True

    def walk(y_i: int) -> QFunctor | None:
        if y_i == len(y_cat):
            return QFunctor(y_cat, z_cat, tuple(z_names[j] for j in partial))
        for j in candidates[y_i]:
            if compatible(y_i, j):
                partial.append(j)
                found = walk(y_i + 1)
                if found is not None:
                    return found
                partial.pop()
        return None

    return walk(0)


def one_point_extensions(c: QCategory, new_name: str | None = None) -> Iterator[QCategory]:
    """All symmetric supercategories with exactly one extra point.

    Order: new-point types in element load order, columns lexicographic.
    """
    _require_finite(c)
    _require_symmetric(c)
    dq = c.quantaloid
    if new_name is None:
        new_name = "y0"
        while new_name in c.names:
            new_name += "'"
    types = c.objects.types
    n = len(types)
    for q in dq.objects():
        for column in itertools.product(*(dq.hom(types[x], q) for x in range(n))):
            extended = _extend_matrix(c, q, column, new_name)
            if validate_category(extended).valid:
                yield extended


def _extend_matrix(c: QCategory, q, column: Sequence, new_name: str) -> QCategory:
    dq = c.quantaloid
    carrier = TypedSet(
        dq, c.names + (new_name,), c.objects.types + (q,)
    )
    n = len(c)
    entries = tuple(
        tuple(c.hom.entries[i][j] for j in range(n)) + (column[i],)
        for i in range(n)
    ) + (tuple(dq.involve(column[i]) for i in range(n)) + (dq.identity(q),),)
    return QCategory(carrier, QRelation(carrier, carrier, entries))


def extension_from_presheaf(c: QCategory, mu: Presheaf, new_name: str | None = None) -> QCategory:
    """The one-point extension whose new column is an ambient presheaf."""
    if not is_ambient(c, mu):
        raise PreconditionError("the extension column must be ambient")
    if new_name is None:
        new_name = "y0"
        while new_name in c.names:
            new_name += "'"
    extended = _extend_matrix(c, mu.q, mu.values, new_name)
    report = validate_category(extended)
    assert report.valid, (
        f"an ambient presheaf must induce a valid extension: {report.to_dict()}"
    )
    assert is_symmetric(extended)
    return extended


def find_one_point_retraction(x_cat: QCategory, y_cat: QCategory) -> QFunctor | None:
    """A functor Y -> X restricting to the identity on X, if one exists."""
    _require_symmetric(x_cat)
    _require_symmetric(y_cat)
    extra = [name for name in y_cat.names if name not in x_cat.names]
    if len(extra) != 1 or len(y_cat) != len(x_cat) + 1:
        raise ShapeMismatchError(
            "the supercategory must contain exactly one extra point"
        )
    for name in x_cat.names:
        if x_cat.type_payload(name) != y_cat.type_payload(name):
            raise ShapeMismatchError(f"types disagree at {name!r}")
        for other in x_cat.names:
            if x_cat.hom.at(name, other) != y_cat.hom.at(name, other):
                raise ShapeMismatchError(
                    f"homs disagree at ({name!r}, {other!r}); not a supercategory"
                )
    y0 = extra[0]
    target_type = y_cat.type_payload(y0)
    for z in x_cat.names:
        if x_cat.type_payload(z) != target_type:
            continue
        mapping = {name: name for name in x_cat.names}
        mapping[y0] = z
        h = QFunctor.from_dict(y_cat, x_cat, mapping)
        if validate_functor(h).valid:
            return h
    return None


# -- density and essentiality --------------------------------------------------


def is_dense(f: QFunctor) -> bool:
    """hom_Y = graph <swarrow> graph."""
    require_functor(f)
    gr = graph(f)
    return rel_residual("left", gr, gr) == f.codomain.hom


def is_codense(f: QFunctor) -> bool:
    """hom_Y = cograph <searrow> cograph."""
    require_functor(f)
    co = cograph(f)
    return rel_residual("right", co, co) == f.codomain.hom


@dataclass(frozen=True)
class EssentialResult:
    essential: bool
    counterexample: tuple[QCategory, QFunctor] | None
    categories_checked: int


def _canonical_signature(types: tuple, entries: tuple) -> tuple:
    n = len(types)
    best = None
    for perm in itertools.permutations(range(n)):
        sig = (
            tuple(types[perm[i]] for i in range(n)),
            tuple(entries[perm[i]][perm[j]] for i in range(n) for j in range(n)),
        )
        if best is None or sig < best:
            best = sig
    return best


def enumerate_symmetric_categories(
    dq: DiagonalQuantaloid,
    max_objects: int,
    name_prefix: str = "x",
    up_to_iso: bool = False,
) -> Iterator[QCategory]:
    """Every valid symmetric category with at most max_objects points.

    Deterministic order: size ascending, diagonal types lexicographic in
    element load order, then upper-triangle entries lexicographic.  With
    ``up_to_iso`` relabelings of the points are emitted only once.
    """
    if dq._homs is None:
        raise UnsupportedQuantaleError("enumeration needs a finite quantale")
    seen: set = set()
    for n in range(max_objects + 1):
        names = tuple(f"{name_prefix}{i}" for i in range(n))
        for types in itertools.product(dq.objects(), repeat=n):
            pair_indices = [(i, j) for i in range(n) for j in range(i + 1, n)]
            pools = [dq.hom(types[i], types[j]) for i, j in pair_indices]
            for choice in itertools.product(*pools):
                entries = [[None] * n for _ in range(n)]
                for i in range(n):
                    entries[i][i] = dq.identity(types[i])
                for (i, j), u in zip(pair_indices, choice):
                    entries[i][j] = u
                    entries[j][i] = dq.involve(u)
                matrix = tuple(tuple(row) for row in entries)
                if up_to_iso:
                    sig = (n, _canonical_signature(types, matrix))
                    if sig in seen:
                        continue
                    seen.add(sig)
                carrier = TypedSet(dq, names, types)
                cat = QCategory(carrier, QRelation(carrier, carrier, matrix))
                if validate_category(cat).valid:
                    yield cat


def is_essential_bruteforce(f: QFunctor, max_objects: int = 4) -> EssentialResult:
    """Test essentiality by brute force over small receiving categories.

    Enumerates symmetric categories Z with at most |codomain| + 1 objects
    (up to relabeling) and every functor g out of the codomain, and checks
    that g is fully faithful whenever the composite g . f is.  Refuses when
    the implied bound exceeds ``max_objects``.
    """
    require_functor(f)
    if not is_fully_faithful(f):
        raise PreconditionError("essentiality is only defined for fully faithful functors")
    _require_symmetric(f.domain)
    _require_symmetric(f.codomain)
    z_bound = len(f.codomain) + 1
    if z_bound > max_objects:
        raise BoundExceededError(
            f"would need categories of size {z_bound}, above the bound {max_objects}"
        )
    dq = f.domain.quantaloid
    dom, cod = f.domain, f.codomain
    checked = 0
    for z_cat in enumerate_symmetric_categories(dq, z_bound, name_prefix="z", up_to_iso=True):
        checked += 1
        for g in all_functors(cod, z_cat):
            gf = functor_compose(g, f)
            if is_fully_faithful(gf) and not is_fully_faithful(g):
                return EssentialResult(False, (z_cat, g), checked)
    return EssentialResult(True, None, checked)


# -- transport along dense embeddings -------------------------------------------


@dataclass(frozen=True)
class TransportResult:
    pairs: tuple[tuple[Presheaf, Presheaf], ...]
    dense: bool
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def tight_span_restriction(f: QFunctor) -> TransportResult:
    """Precompose tight presheaves on the codomain with the graph of f.

    For dense fully faithful f the images are tight on the domain and the
    assignment is a bijective isometry between the two tight spans; any
    violation is reported rather than raised.
    """
    require_functor(f)
    if not is_fully_faithful(f):
        raise PreconditionError("transport needs a fully faithful functor")
    _require_finite(f.domain)
    dq = f.domain.quantaloid
    dom, cod = f.domain, f.codomain
    span_cod = tight_span(cod)
    gr = graph(f).entries
    dom_types = dom.objects.types
    cod_types = cod.objects.types

    pairs = []
    failures: list[str] = []
    dense = is_dense(f)
    image_keys = []
    for lam in span_cod.members:
        values = tuple(
            dq.hom_join(
                dom_types[x],
                lam.q,
                (
                    dq.compose(gr[x][y], cod_types[y], lam.values[y])
                    for y in range(len(cod))
                ),
            )
            for x in range(len(dom))
        )
        if dense and not is_tight_column(dom, lam.q, values):
            failures.append(
                f"image of {lam.to_dict()} is not tight on the domain"
            )
            continue
        image = Presheaf(dom, lam.q, values)
        pairs.append((lam, image))
        image_keys.append((lam.q, values))

    if dense:
        span_dom = tight_span(dom)
        if len(set(image_keys)) != len(image_keys):
            failures.append("transport is not injective")
        wanted = {(mu.q, mu.values) for mu in span_dom.members}
        if set(image_keys) != wanted:
            failures.append("transport is not onto the domain tight span")
        for i, (lam_i, img_i) in enumerate(pairs):
            for lam_j, img_j in pairs[i:]:
                if presheaf_hom(lam_i, lam_j) != presheaf_hom(img_i, img_j):
                    failures.append("transport is not an isometry")
                    break

    return TransportResult(tuple(pairs), dense, tuple(failures))


# -- ambient enumeration (for maximality checks) --------------------------------


def enumerate_ambient(c: QCategory) -> list[Presheaf]:
    """All ambient presheaves, same order as the presheaf enumeration."""
    return [mu for mu in enumerate_presheaves(c) if is_ambient(c, mu)]
