"""Exact path algebras of directed quivers and the tensor algebra of a biquiver.

Conventions used throughout the package:

* A path is written right to left, so the path ``b*a`` means "a, then b".
  Internally a :class:`Path` stores the arrow names in written order.
* Elements are plain ``dict`` objects mapping basis items to nonzero
  :class:`fractions.Fraction` coefficients.
* A *word* of tensor degree ``k`` is a tuple ``(p0, v1, p1, ..., vk, pk)``
  whose even slots are paths and whose odd slots are dashed arrow names.
  It stands for ``p0 * v1 * p1 * ... * vk * pk``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

import sympy


def scalar(value) -> Fraction:
    """Coerce ints, strings like ``"-1/2"``, Fractions and sympy rationals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, sympy.Basic):
        value = sympy.Rational(value)
        return Fraction(int(value.p), int(value.q))
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


def to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def format_scalar(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# ---------------------------------------------------------------------------
# sparse element helpers


def add_to(acc: dict, elem: Mapping, coef: Fraction = Fraction(1)) -> dict:
    """acc += coef * elem, dropping cancelled terms."""
    if not coef:
        return acc
    for key, val in elem.items():
        new = acc.get(key, 0) + coef * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def combine(terms: Iterable[tuple[object, Fraction]]) -> dict:
    acc: dict = {}
    for key, val in terms:
        new = acc.get(key, 0) + val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)
    return acc


def scale(elem: Mapping, coef: Fraction) -> dict:
    if not coef:
        return {}
    return {k: v * coef for k, v in elem.items()}


# ---------------------------------------------------------------------------
# quivers and paths


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int
    degree: int  # 0 for solid, 1 for dashed

    @property
    def is_dashed(self) -> bool:
        return self.degree == 1


class QuiverError(ValueError):
    pass


class Quiver:
    """Vertices ``1..n`` with solid and dashed arrows, all pointing upwards."""

    def __init__(self, n: int, arrows: Iterable[Arrow]):
        if n < 0:
            raise QuiverError("vertex count must be nonnegative")
        self.n = n
        self.arrows: tuple[Arrow, ...] = tuple(arrows)
        self._by_name: dict[str, Arrow] = {}
        for arrow in self.arrows:
            if arrow.name in self._by_name:
                raise QuiverError(f"duplicate arrow name {arrow.name!r}")
            if arrow.degree not in (0, 1):
                raise QuiverError(f"arrow {arrow.name!r} has degree {arrow.degree}")
            if not (1 <= arrow.source <= n and 1 <= arrow.target <= n):
                raise QuiverError(f"arrow {arrow.name!r} has an endpoint outside 1..{n}")
            if arrow.source >= arrow.target:
                raise QuiverError(
                    f"arrow {arrow.name!r}: {arrow.source} -> {arrow.target} violates directedness"
                )
            self._by_name[arrow.name] = arrow
        self.solid: tuple[Arrow, ...] = tuple(a for a in self.arrows if a.degree == 0)
        self.dashed: tuple[Arrow, ...] = tuple(a for a in self.arrows if a.degree == 1)

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    @property
    def key(self) -> tuple:
        return (self.n, tuple((a.name, a.source, a.target, a.degree) for a in self.arrows))

    def __eq__(self, other) -> bool:
        return isinstance(other, Quiver) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Quiver(n={self.n}, solid={[a.name for a in self.solid]}, dashed={[a.name for a in self.dashed]})"


class Path(NamedTuple):
    source: int
    target: int
    arrows: tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e{self.source}"


def trivial(vertex: int) -> Path:
    return Path(vertex, vertex, ())


def concat(left: Path, right: Path) -> Path | None:
    """The raw product ``left * right`` ("right, then left"), or None."""
    if right.target != left.source:
        return None
    return Path(right.source, left.target, left.arrows + right.arrows)


def path_key(p: Path) -> tuple:
    # length first, then arrow names in the order they are traversed
    return (len(p.arrows), tuple(reversed(p.arrows)), p.source, p.target)


def word_key(word: tuple) -> tuple:
    # degree, length, then the arrow names in the order they are traversed
    names = []
    for slot in reversed(word):
        if isinstance(slot, Path):
            names.extend(reversed(slot.arrows))
        else:
            names.append(slot)
    shape = tuple(len(s.arrows) for s in reversed(word[::2]))
    return (len(word) // 2, len(names), tuple(names), shape, word[-1].source, word[0].target)


def word_source(word: tuple) -> int:
    return word[-1].source


def word_target(word: tuple) -> int:
    return word[0].target


def word_degree(word: tuple) -> int:
    return len(word) // 2


def word_str(word: tuple) -> str:
    """Text form; degree two words put the middle path on the left factor."""
    if len(word) == 1:
        return str(word[0])
    chunks: list[list[str]] = [[]]
    for idx, slot in enumerate(word):
        if isinstance(slot, Path):
            chunks[-1].extend(slot.arrows)
        else:
            if idx > 1:
                chunks.append([])
            chunks[-1].append(slot)
    return "@".join("*".join(c) for c in chunks)


def element_str(elem: Mapping, key=word_key, show=word_str) -> str:
    if not elem:
        return "0"
    out = []
    for item in sorted(elem, key=key):
        coef = elem[item]
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = show(item)
        text = body if mag == 1 else f"{format_scalar(mag)} {body}"
        out.append((sign, text))
    first_sign, first = out[0]
    s = ("-" if first_sign == "-" else "") + first
    for sign, text in out[1:]:
        s += f" {sign} {text}"
    return s


# ---------------------------------------------------------------------------
# path algebra with relations


class RelationError(ValueError):
    pass


def enumerate_paths(quiver: Quiver) -> list[Path]:
    """All paths of solid arrows, trivial ones included."""
    out = [trivial(i) for i in range(1, quiver.n + 1)]
    frontier = [p for p in out]
    while frontier:
        nxt = []
        for p in frontier:
            for a in quiver.solid:
                if a.source == p.target:
                    nxt.append(Path(p.source, a.target, (a.name,) + p.arrows))
        out.extend(nxt)
        frontier = nxt
    return out


class PathAlgebra:
    """The algebra kQ0/(relations) with a basis of standard (irreducible) paths.

    The ideal generated by the relations is spanned by ``p*r*q``; it is
    row-reduced with the largest path of each row as pivot.  Non-pivot paths
    form the basis.
    """

    def __init__(self, quiver: Quiver, relations: Iterable[Mapping[Path, Fraction]] = ()):
        self.quiver = quiver
        self.n = quiver.n
        rels = []
        for rel in relations:
            rel = {p: scalar(c) for p, c in rel.items() if c}
            if not rel:
                continue
            ends = {(p.source, p.target) for p in rel}
            if len(ends) != 1:
                raise RelationError(f"relation {element_str(rel, path_key, str)} is not vertex-homogeneous")
            for p in rel:
                if p.is_trivial:
                    raise RelationError(f"relation {element_str(rel, path_key, str)} involves a trivial path")
                for name in p.arrows:
                    if name not in quiver or quiver.arrow(name).degree != 0:
                        raise RelationError(f"relation uses {name!r}, which is not a solid arrow")
            rels.append(rel)
        self.relations = tuple(rels)

        self.paths = enumerate_paths(quiver)
        by_pair: dict[tuple[int, int], list[Path]] = {}
        for p in self.paths:
            by_pair.setdefault((p.source, p.target), []).append(p)
        self._rewrite: dict[Path, dict[Path, Fraction]] = {}
        if self.relations:
            self._reduce_ideal(by_pair)
        basis = [p for p in self.paths if p not in self._rewrite]
        self.basis: tuple[Path, ...] = tuple(sorted(basis, key=path_key))
        self._standard = frozenset(self.basis)
        self._between: dict[tuple[int, int], tuple[Path, ...]] = {}
        for p in self.basis:
            self._between.setdefault((p.source, p.target), ())
            self._between[(p.source, p.target)] += (p,)
        self._mul_cache: dict[tuple[Path, Path], dict[Path, Fraction]] = {}

    def _reduce_ideal(self, by_pair):
        rows: dict[tuple[int, int], list[dict[Path, Fraction]]] = {}
        for rel in self.relations:
            s, t = next(iter(rel)).source, next(iter(rel)).target
            for q in self.paths:
                if q.target != s:
                    continue
                for p in self.paths:
                    if p.source != t:
                        continue
                    row = {}
                    for r, c in rel.items():
                        add_to(row, {concat(p, concat(r, q)): c})
                    if row:
                        rows.setdefault((q.source, p.target), []).append(row)
        for pair, pair_rows in rows.items():
            cols = sorted(by_pair[pair], key=path_key, reverse=True)
            index = {p: k for k, p in enumerate(cols)}
            mat = sympy.zeros(len(pair_rows), len(cols))
            for r, row in enumerate(pair_rows):
                for p, c in row.items():
                    mat[r, index[p]] = to_sympy(c)
            rref, pivots = mat.rref()
            for r, col in enumerate(pivots):
                lead = cols[col]
                rewrite = {}
                for k in range(len(cols)):
                    if k != col and rref[r, k] != 0:
                        rewrite[cols[k]] = -scalar(rref[r, k])
                self._rewrite[lead] = rewrite

    # -- basis access ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def between(self, source: int, target: int) -> tuple[Path, ...]:
        """Basis of e_target A e_source (paths from source to target)."""
        return self._between.get((source, target), ())

    def starting_at(self, vertex: int) -> list[Path]:
        """Basis of A e_vertex."""
        return [p for p in self.basis if p.source == vertex]

    def ending_at(self, vertex: int) -> list[Path]:
        """Basis of e_vertex A."""
        return [p for p in self.basis if p.target == vertex]

    @property
    def radical_basis(self) -> list[Path]:
        return [p for p in self.basis if not p.is_trivial]

    def is_standard(self, p: Path) -> bool:
        return p in self._standard

    # -- arithmetic ----------------------------------------------------------

    def normal_form(self, p: Path) -> dict[Path, Fraction]:
        if p in self._standard:
            return {p: Fraction(1)}
        if p in self._rewrite:
            return dict(self._rewrite[p])
        raise RelationError(f"{p} is not a path of this algebra")

    def normalize(self, elem: Mapping[Path, Fraction]) -> dict[Path, Fraction]:
        out: dict[Path, Fraction] = {}
        for p, c in elem.items():
            add_to(out, self.normal_form(p), scalar(c))
        return out

    def mul_paths(self, left: Path, right: Path) -> dict[Path, Fraction]:
        key = (left, right)
        hit = self._mul_cache.get(key)
        if hit is None:
            raw = concat(left, right)
            hit = {} if raw is None else self.normal_form(raw)
            self._mul_cache[key] = hit
        return hit

    def multiply(self, x: Mapping[Path, Fraction], y: Mapping[Path, Fraction]) -> dict[Path, Fraction]:
        out: dict[Path, Fraction] = {}
        for p, c in x.items():
            for q, d in y.items():
                add_to(out, self.mul_paths(p, q), c * d)
        return out

    def one(self) -> dict[Path, Fraction]:
        return {trivial(i): Fraction(1) for i in range(1, self.n + 1)}

    def element(self, text_or_path) -> dict[Path, Fraction]:
        if isinstance(text_or_path, Path):
            return self.normal_form(text_or_path)
        return self.normal_form(self.path_from_names(text_or_path.split("*")))

    def path_from_names(self, names: list[str]) -> Path:
        arrows = [self.quiver.arrow(x) for x in names]
        p = Path(arrows[-1].source, arrows[-1].source, ())
        for a in reversed(arrows):
            nxt = concat(Path(a.source, a.target, (a.name,)), p)
            if nxt is None:
                raise QuiverError(f"{'*'.join(names)} is not a path")
            p = nxt
        return p

    def multiplication_table(self) -> dict[tuple[Path, Path], dict[Path, Fraction]]:
        return {(p, q): self.mul_paths(p, q) for p in self.basis for q in self.basis if q.target == p.source}


def minimal_relations(quiver: Quiver, relations: Iterable[Mapping[Path, Fraction]]) -> list[dict[Path, Fraction]]:
    """A minimal generating subset of the relations.

    For an ideal I inside the arrow ideal J, a set generates I exactly when it
    spans I/(JI + IJ), so relations are kept greedily while they stay
    independent modulo JI + IJ.
    """
    rels = [{p: scalar(c) for p, c in r.items() if c} for r in relations]
    rels = [r for r in rels if r]
    if len(rels) < 2:
        return rels
    paths = enumerate_paths(quiver)
    index = {p: k for k, p in enumerate(paths)}

    def vector(elem):
        v = [0] * len(paths)
        for p, c in elem.items():
            v[index[p]] += to_sympy(c)
        return v

    rows = []
    for r in rels:
        (s, t), = {(p.source, p.target) for p in r}
        for left in (q for q in paths if q.source == t):
            for right in (q for q in paths if q.target == s):
                if left.is_trivial and right.is_trivial:
                    continue
                elem: dict = {}
                for p, c in r.items():
                    add_to(elem, {concat(left, concat(p, right)): c})
                if elem:
                    rows.append(vector(elem))
    base = sympy.Matrix(rows).rank() if rows else 0
    kept = []
    for r in rels:
        trial = rows + [vector(r)]
        rank = sympy.Matrix(trial).rank()
        if rank > base:
            kept.append(r)
            rows, base = trial, rank
    return kept


_ALGEBRA_CACHE: dict[tuple, PathAlgebra] = {}


def relations_key(relations: Iterable[Mapping[Path, Fraction]]) -> tuple:
    return tuple(tuple(sorted(((p, scalar(c)) for p, c in r.items()), key=lambda t: path_key(t[0]))) for r in relations)


def build_path_algebra(quiver: Quiver, relations: Iterable[Mapping[Path, Fraction]] = ()) -> PathAlgebra:
    """Cached constructor; path algebras are immutable once built."""
    relations = list(relations)
    key = (quiver.key, relations_key(relations))
    hit = _ALGEBRA_CACHE.get(key)
    if hit is None:
        hit = PathAlgebra(quiver, relations)
        if len(_ALGEBRA_CACHE) > 512:
            _ALGEBRA_CACHE.clear()
        _ALGEBRA_CACHE[key] = hit
    return hit


# ---------------------------------------------------------------------------
# tensor algebra of a differential biquiver


class TensorAlgebra:
    """Words over standard paths and dashed generators, with a Leibniz differential.

    ``d0`` maps each solid arrow to a degree one element and ``d1`` each dashed
    arrow to a degree two element; both are given in normal form.  The
    differential satisfies ``d(xy) = d(x) y + (-1)^deg(x) x d(y)``.
    """

    def __init__(self, algebra: PathAlgebra, dashed: Iterable[Arrow], d0=None, d1=None):
        self.algebra = algebra
        self.dashed = tuple(dashed)
        self._dashed_by_name = {v.name: v for v in self.dashed}
        self.d0: dict[str, dict] = dict(d0 or {})
        self.d1: dict[str, dict] = dict(d1 or {})
        self._dpath: dict[Path, dict] = {}
        self._dword: dict[tuple, dict] = {}
        self._basis: dict[int, tuple] = {}

    # -- words ---------------------------------------------------------------

    def gen(self, name: str) -> dict:
        v = self._dashed_by_name[name]
        return {(trivial(v.target), name, trivial(v.source)): Fraction(1)}

    def path(self, p: Path) -> dict:
        return {(q,): c for q, c in self.algebra.normal_form(p).items()}

    def normalize_word(self, word: tuple) -> dict:
        """Normal form of a word whose path slots may be non-standard."""
        partial = {(): Fraction(1)}
        for slot in word:
            if isinstance(slot, Path):
                nf = self.algebra.normal_form(slot)
                partial = {w + (q,): c * d for w, c in partial.items() for q, d in nf.items()}
            else:
                partial = {w + (slot,): c for w, c in partial.items()}
        return partial

    def normalize(self, elem: Mapping) -> dict:
        out: dict = {}
        for word, c in elem.items():
            add_to(out, self.normalize_word(word), scalar(c))
        return out

    def mul_words(self, left: tuple, right: tuple) -> dict:
        middle = self.algebra.mul_paths(left[-1], right[0])
        head, tail = left[:-1], right[1:]
        return {head + (m,) + tail: c for m, c in middle.items()}

    def mul(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for u, c in x.items():
            for w, d in y.items():
                add_to(out, self.mul_words(u, w), c * d)
        return out

    def basis(self, degree: int) -> tuple:
        """All normal words of the given tensor degree, sorted."""
        if degree not in self._basis:
            words = [(p,) for p in self.algebra.basis]
            for _ in range(degree):
                longer = []
                for w in words:
                    src = w[-1].source
                    for v in self.dashed:
                        if v.target != src:
                            continue
                        for q in self.algebra.ending_at(v.source):
                            longer.append(w + (v.name, q))
                words = longer
            self._basis[degree] = tuple(sorted(words, key=word_key))
        return self._basis[degree]

    # -- differential --------------------------------------------------------

    def d_raw_path(self, p: Path) -> dict:
        """Leibniz differential of a (possibly non-standard) path of solid arrows."""
        out: dict = {}
        arrows = p.arrows
        for k, name in enumerate(arrows):
            dval = self.d0.get(name)
            if not dval:
                continue
            left = arrows[:k]
            right = arrows[k + 1 :]
            q = self.algebra.quiver.arrow(name)
            lpath = Path(q.target, p.target, left)
            rpath = Path(p.source, q.source, right)
            term = self.mul(self.mul(self.path(lpath), dval), self.path(rpath))
            add_to(out, term)
        return out

    def d_path(self, p: Path) -> dict:
        hit = self._dpath.get(p)
        if hit is None:
            hit = self.d_raw_path(p)
            self._dpath[p] = hit
        return hit

    def d_word(self, word: tuple) -> dict:
        hit = self._dword.get(word)
        if hit is not None:
            return hit
        out: dict = {}
        k = len(word) // 2
        for i in range(k + 1):
            p = word[2 * i]
            if p.is_trivial:
                continue
            dp = self.d_path(p)
            if not dp:
                continue
            left = word[: 2 * i] + (trivial(p.target),)
            right = (trivial(p.source),) + word[2 * i + 1 :]
            sign = -1 if i % 2 else 1
            add_to(out, self.mul(self.mul({left: Fraction(1)}, dp), {right: Fraction(1)}), Fraction(sign))
        for j in range(1, k + 1):
            v = word[2 * j - 1]
            dv = self.d1.get(v)
            if not dv:
                continue
            left = word[: 2 * j - 1]
            right = word[2 * j :]
            sign = -1 if (j - 1) % 2 else 1
            add_to(out, self.mul(self.mul({left: Fraction(1)}, dv), {right: Fraction(1)}), Fraction(sign))
        self._dword[word] = out
        return out

    def d(self, elem: Mapping) -> dict:
        out: dict = {}
        for w, c in elem.items():
            add_to(out, self.d_word(w), c)
        return out
