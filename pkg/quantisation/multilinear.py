"""
Sparse multilinear maps between tensor products of finite-dimensional spaces.

A ``LinMap`` from V1⊗...⊗Vm to W1⊗...⊗Wn stores its non-zero entries keyed
by (input multi-index, output multi-index). An element of W1⊗...⊗Wn is a
LinMap with empty domain; scalars are maps between empty leg tuples.
Coefficients are Fractions or TruncSeries.
"""
import itertools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import NoSolution, RingMismatch, SignatureMismatch, TruncationObstruction
from .scalar import TruncSeries, format_coefficient, from_qq, hbar_part, ring_order, to_qq
from .scalar import lift as lift_coefficient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Space:
    """A finite-dimensional space with labelled basis and optional PBW grading."""

    name: str
    labels: tuple
    grades: tuple = None
    is_dual: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'labels', tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"Space {self.name} has repeated basis labels")
        if self.grades is not None:
            object.__setattr__(self, 'grades', tuple(self.grades))
            if len(self.grades) != len(self.labels):
                raise ValueError(f"Space {self.name} grades do not match its basis")

    @property
    def dim(self):
        return len(self.labels)

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    def degree(self, i):
        return self.grades[i] if self.grades is not None else 0

    def label(self, i):
        return f"{self.labels[i]}*" if self.is_dual else str(self.labels[i])

    def dual(self):
        return replace(self, is_dual=not self.is_dual)

    def indices_up_to(self, max_degree):
        return [i for i in range(self.dim) if self.degree(i) <= max_degree]

    @property
    def display_name(self):
        return f"{self.name}*" if self.is_dual else self.name


def total_degree(spaces, idx):
    return sum(s.degree(i) for s, i in zip(spaces, idx))


def _all_indices(spaces):
    return itertools.product(*(range(s.dim) for s in spaces))


def _add_into(target, key, value):
    new = target.get(key, 0) + value
    if new == 0:
        target.pop(key, None)
    else:
        target[key] = new


class LinMap:
    """Sparse multilinear map; immutable once built."""

    __slots__ = ('domain', 'codomain', '_columns')

    def __init__(self, domain, codomain, entries=None, columns=None):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        cols = {}
        if columns is not None:
            for i, col in columns.items():
                clean = {o: c for o, c in col.items() if c != 0}
                if clean:
                    cols[tuple(i)] = clean
        if entries is not None:
            for (i, o), c in entries.items():
                if c != 0:
                    _add_into(cols.setdefault(tuple(i), {}), tuple(o), c)
            cols = {i: col for i, col in cols.items() if col}
        self._columns = cols

    @classmethod
    def element(cls, spaces, vector):
        """An element of the tensor product of ``spaces`` as a map from k."""
        return cls((), spaces, columns={(): dict(vector)})

    @property
    def vector(self):
        """Components of an element (domain must be empty)."""
        if self.domain:
            raise SignatureMismatch("vector is only defined for elements")
        return dict(self._columns.get((), {}))

    @property
    def entries(self):
        return {(i, o): c for i, col in self._columns.items() for o, c in col.items()}

    def column(self, idx):
        return self._columns.get(tuple(idx), {})

    def columns(self):
        return self._columns.items()

    def entry(self, idx_in, idx_out):
        return self._columns.get(tuple(idx_in), {}).get(tuple(idx_out), 0)

    def __len__(self):
        return sum(len(col) for col in self._columns.values())

    def is_zero(self):
        return not self._columns

    @property
    def ring(self):
        """hbar order of the coefficients, or None when all are rational."""
        for col in self._columns.values():
            for c in col.values():
                order = ring_order(c)
                if order is not None:
                    return order
        return None

    def validate(self):
        """Raise if an index is out of bounds."""
        for i, col in self._columns.items():
            _check_index(self.domain, i)
            for o in col:
                _check_index(self.codomain, o)
        return self

    # composition and tensor products

    def __mul__(self, other):
        if isinstance(other, LinMap):
            return compose(self, other)
        return self.scale(other)

    def __rmul__(self, scalar):
        return self.scale(scalar)

    def __matmul__(self, other):
        return tensor(self, other)

    def scale(self, scalar):
        return LinMap(self.domain, self.codomain, columns={
            i: {o: c * scalar for o, c in col.items()} for i, col in self._columns.items()
        })

    def __add__(self, other):
        if other == 0:
            return self
        _same_signature(self, other)
        cols = {i: dict(col) for i, col in self._columns.items()}
        for i, col in other._columns.items():
            target = cols.setdefault(i, {})
            for o, c in col.items():
                _add_into(target, o, c)
        return LinMap(self.domain, self.codomain, columns=cols)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if isinstance(other, LinMap):
            if self.domain != other.domain or self.codomain != other.codomain:
                return False
            return (self - other).is_zero()
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash((self.domain, self.codomain, len(self)))

    def __repr__(self):
        dom = '⊗'.join(s.display_name for s in self.domain) or 'k'
        cod = '⊗'.join(s.display_name for s in self.codomain) or 'k'
        return f"LinMap({dom} -> {cod}, {len(self)} entries)"

    # evaluation

    def apply(self, vector):
        """Image of a vector given as {input multi-index: coefficient}."""
        out = {}
        for i, a in vector.items():
            if a == 0:
                continue
            for o, c in self._columns.get(tuple(i), {}).items():
                _add_into(out, o, c * a)
        return out

    def __call__(self, element):
        """Apply to an element (a LinMap from k) of the domain."""
        return compose(self, element)

    # coefficient handling

    def map_coefficients(self, fn):
        return LinMap(self.domain, self.codomain, columns={
            i: {o: fn(c) for o, c in col.items()} for i, col in self._columns.items()
        })

    def hbar_part(self, power):
        """The rational map formed by the h^power coefficients."""
        return self.map_coefficients(lambda c: hbar_part(c, power))

    def mod_hbar(self):
        return self.hbar_part(0)

    def lift(self, order):
        return self.map_coefficients(lambda c: lift_coefficient(c, order))

    # windows

    def restrict(self, predicate):
        """Keep only the columns whose input multi-index satisfies predicate."""
        return LinMap(self.domain, self.codomain, columns={
            i: col for i, col in self._columns.items() if predicate(i)
        })

    def window(self, max_degree):
        """Restrict to inputs of total PBW degree at most ``max_degree``."""
        return self.restrict(lambda i: total_degree(self.domain, i) <= max_degree)

    def output_window(self, max_degree):
        """Drop output components of total degree above ``max_degree``."""
        return LinMap(self.domain, self.codomain, columns={
            i: {o: c for o, c in col.items() if total_degree(self.codomain, o) <= max_degree}
            for i, col in self._columns.items()
        })

    # leg bookkeeping

    def permute_output(self, order):
        """permute(order, codomain) ∘ self, by relabelling keys."""
        order = tuple(order)
        codomain = tuple(self.codomain[k] for k in order)
        return LinMap(self.domain, codomain, columns={
            i: {tuple(o[k] for k in order): c for o, c in col.items()}
            for i, col in self._columns.items()
        })

    def permute_input(self, order):
        """self ∘ permute(order, spaces), with spaces chosen to match."""
        order = tuple(order)
        n = len(order)
        spaces = [None] * n
        for k, j in enumerate(order):
            spaces[j] = self.domain[k]
        cols = {}
        for y, col in self._columns.items():
            x = [None] * n
            for k, j in enumerate(order):
                x[j] = y[k]
            cols[tuple(x)] = col
        return LinMap(spaces, self.codomain, columns=cols)

    def describe(self, idx_in, idx_out):
        """Human-readable labels for a pair of multi-indices."""
        return {
            'in': [s.label(i) for s, i in zip(self.domain, idx_in)],
            'out': [s.label(i) for s, i in zip(self.codomain, idx_out)],
        }

    def first_entry(self):
        """A deterministic witness entry (smallest keys), or None."""
        if not self._columns:
            return None
        i = min(self._columns)
        o = min(self._columns[i])
        return {**self.describe(i, o), 'coeff': format_coefficient(self._columns[i][o])}

    def to_records(self):
        """Serializable records {in, out, coeff}, sorted by index."""
        records = []
        for i in sorted(self._columns):
            col = self._columns[i]
            for o in sorted(col):
                records.append({
                    'in': [s.labels[k] for s, k in zip(self.domain, i)],
                    'out': [s.labels[k] for s, k in zip(self.codomain, o)],
                    'coeff': format_coefficient(col[o]),
                })
        return records


def _check_index(spaces, idx):
    if len(idx) != len(spaces):
        raise SignatureMismatch(f"multi-index {idx} has wrong arity for {len(spaces)} legs")
    for s, k in zip(spaces, idx):
        if not 0 <= k < s.dim:
            raise SignatureMismatch(f"index {k} out of range for {s.name}")


def _same_signature(f, g):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise SignatureMismatch(f"{f!r} and {g!r} have different signatures")


def identity(*spaces):
    if len(spaces) == 1 and isinstance(spaces[0], (tuple, list)):
        spaces = tuple(spaces[0])
    return LinMap(spaces, spaces, columns={idx: {idx: 1} for idx in _all_indices(spaces)})


def compose(*maps):
    """compose(f, g, h) = f∘g∘h."""
    result = maps[-1]
    for f in reversed(maps[:-1]):
        result = _compose2(f, result)
    return result


def _compose2(f, g):
    if g.codomain != f.domain:
        raise SignatureMismatch(
            f"cannot compose {f!r} after {g!r}: "
            f"{[s.display_name for s in g.codomain]} != {[s.display_name for s in f.domain]}"
        )
    cols = {}
    for i, col in g._columns.items():
        out = {}
        for mid, a in col.items():
            for o, c in f._columns.get(mid, {}).items():
                _add_into(out, o, c * a)
        if out:
            cols[i] = out
    return LinMap(g.domain, f.codomain, columns=cols)


def tensor(*maps):
    result = maps[0]
    for g in maps[1:]:
        result = _tensor2(result, g)
    return result


def _tensor2(f, g):
    rf, rg = f.ring, g.ring
    if rf is not None and rg is not None and rf != rg:
        raise RingMismatch(f"cannot tensor maps over orders {rf} and {rg}")
    cols = {}
    for i1, c1 in f._columns.items():
        for i2, c2 in g._columns.items():
            cols[i1 + i2] = {o1 + o2: a * b for o1, a in c1.items() for o2, b in c2.items()}
    return LinMap(f.domain + g.domain, f.codomain + g.codomain, columns=cols)


def permute(order, spaces):
    """Map V_0⊗...⊗V_{n-1} -> V_{order[0]}⊗...⊗V_{order[n-1]}.

    Output leg k carries input leg order[k]; permute(s)∘permute(t) equals
    permute(t∘s) with (t∘s)[k] = t[s[k]].
    """
    order = tuple(order)
    spaces = tuple(spaces)
    if sorted(order) != list(range(len(spaces))):
        raise SignatureMismatch(f"{order} is not a permutation of {len(spaces)} legs")
    return identity(spaces).permute_output(order)


def flip(v, w):
    return permute((1, 0), (v, w))


def dualize(f):
    """Transpose with respect to dual bases; legs are reversed."""
    cols = {}
    for i, col in f._columns.items():
        for o, c in col.items():
            cols.setdefault(o[::-1], {})[i[::-1]] = c
    return LinMap(
        tuple(s.dual() for s in reversed(f.codomain)),
        tuple(s.dual() for s in reversed(f.domain)),
        columns=cols,
    )


def apply_at(op, element, position):
    """Apply ``op`` to the legs of ``element`` starting at ``position``."""
    k = len(op.domain)
    legs = element.codomain
    if tuple(legs[position:position + k]) != op.domain:
        raise SignatureMismatch(f"{op!r} does not match legs at position {position}")
    out = {}
    for idx, a in element.vector.items():
        pre, mid, post = idx[:position], idx[position:position + k], idx[position + k:]
        for o, c in op.column(mid).items():
            _add_into(out, pre + o + post, c * a)
    codomain = legs[:position] + op.codomain + legs[position + k:]
    return LinMap.element(codomain, out)


# exact linear algebra


@dataclass
class Solution:
    """Solutions of a linear system: particular + span(kernel)."""

    particular: dict = None
    kernel: list = field(default_factory=list)

    @property
    def dim(self):
        return len(self.kernel)


def domain_matrix(rows, ncols):
    """A sparse ``DomainMatrix`` over QQ from rows given as dicts column -> value."""
    entries = {}
    for r, row in enumerate(rows):
        nonzero = {c: to_qq(v) for c, v in row.items() if v}
        if nonzero:
            entries[r] = nonzero
    return DomainMatrix(entries, (len(rows), ncols), QQ)


def row_echelon(rows, ncols, rhs=None):
    """Reduced row echelon form of sparse rational rows, computed by sympy.

    ``rows`` are dicts column -> Fraction. Returns (rows, pivots, rhs) with
    pivot entries normalized to 1; raises NoSolution on an inconsistent
    right-hand side.
    """
    rows = [dict(r) for r in rows]
    if rhs is not None:
        for row, b in zip(rows, rhs):
            row[ncols] = b
    width = ncols + (rhs is not None)
    if not rows or not width:
        return [], [], []
    reduced, pivots = domain_matrix(rows, width).rref()
    pivots = list(pivots)
    if ncols in pivots:
        raise NoSolution("inconsistent linear system")
    sparse = reduced.to_sparse().rep
    out_rows, out_rhs = [], []
    for r in range(len(pivots)):
        row = {c: from_qq(v) for c, v in sparse.get(r, {}).items()}
        out_rhs.append(row.pop(ncols, Fraction(0)))
        out_rows.append(row)
    return out_rows, pivots, out_rhs


def _solve_rational(columns, target=None):
    """Solve Σ x_j columns[j] = target over Q; columns are dicts row-key -> value."""
    row_keys = {}
    for col in columns:
        for key in col:
            row_keys.setdefault(key, len(row_keys))
    if target:
        for key in target:
            row_keys.setdefault(key, len(row_keys))
    rows = [dict() for _ in row_keys]
    for j, col in enumerate(columns):
        for key, v in col.items():
            if v:
                rows[row_keys[key]][j] = Fraction(v)
    rhs = [Fraction(0)] * len(row_keys)
    for key, v in (target or {}).items():
        rhs[row_keys[key]] = Fraction(v)
    n = len(columns)
    reduced, pivots, rhs = row_echelon(rows, n, rhs)
    pivot_set = set(pivots)
    particular = [Fraction(0)] * n
    for row, col, b in zip(reduced, pivots, rhs):
        particular[col] = b
    kernel = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row, col in zip(reduced, pivots):
            vec[col] = -row.get(free, 0)
        kernel.append(vec)
    return particular, kernel


def solve_columns(columns, target=None, order=None):
    """Solve Σ x_j columns[j] = target; columns are dicts key -> coefficient.

    Over TruncSeries coefficients (``order`` not None) the unknowns are
    x_j = Σ_k h^k x_jk and the system is solved as a block lower-triangular
    rational system. Returns (particular, kernel) as coefficient lists.
    """
    if order is None:
        return _solve_rational(columns, target)
    n = len(columns)

    def block_system(top):
        cols = []
        for k in range(top + 1):
            for col in columns:
                expanded = {}
                for key, v in col.items():
                    for m in range(k, top + 1):
                        part = hbar_part(v, m - k)
                        if part:
                            expanded[(m, key)] = part
                cols.append(expanded)
        rhs = {}
        for key, v in (target or {}).items():
            for m in range(top + 1):
                part = hbar_part(v, m)
                if part:
                    rhs[(m, key)] = part
        return cols, rhs

    try:
        particular, kernel = _solve_rational(*block_system(order))
    except NoSolution:
        for top in range(order + 1):
            try:
                _solve_rational(*block_system(top))
            except NoSolution:
                if top == 0:
                    raise
                raise TruncationObstruction(
                    f"linear system has no solution at order h^{top}", order=top
                ) from None
        raise

    def as_series(flat):
        return [
            TruncSeries(order, [flat[k * n + j] for k in range(order + 1)])
            for j in range(n)
        ]

    return as_series(particular), [as_series(vec) for vec in kernel]


def kernel_and_solve(A, rhs=None):
    """Solutions x of A x = rhs, indexed by the domain multi-indices of A.

    ``rhs`` is a dict over codomain multi-indices (or None for the kernel).
    Returns a Solution whose vectors are dicts domain multi-index -> value.
    """
    unknowns = list(_all_indices(A.domain))
    columns = [A.column(idx) for idx in unknowns]
    order = A.ring
    if rhs:
        for v in rhs.values():
            if isinstance(v, TruncSeries):
                order = v.order
                break
    particular, kernel = solve_columns(columns, rhs, order)

    def as_dict(vec):
        return {idx: c for idx, c in zip(unknowns, vec) if c != 0}

    sol = Solution(as_dict(particular) if rhs is not None else None, [as_dict(v) for v in kernel])
    logger.debug("solved %d unknowns: kernel dimension %d", len(unknowns), sol.dim)
    return sol


def nullspace(A):
    """Basis of ker A as dicts over the domain multi-indices."""
    return kernel_and_solve(A).kernel


def rank(A):
    return len(list(_all_indices(A.domain))) - len(nullspace(A))


def solve_linear(candidates, residual, target=None):
    """Coefficients c with Σ c_j residual(candidates[j]) = target.

    ``residual`` must be linear; its values are LinMaps (or lists of LinMaps
    for several simultaneous equations). Returns (particular, kernel) as
    coefficient lists.
    """
    def flatten(value):
        if isinstance(value, LinMap):
            value = [value]
        flat = {}
        order = None
        for n, part in enumerate(value):
            for (i, o), c in part.entries.items():
                flat[(n, i, o)] = c
            order = order if order is not None else part.ring
        return flat, order

    columns = []
    order = None
    for cand in candidates:
        flat, ring = flatten(residual(cand))
        columns.append(flat)
        order = order if order is not None else ring
    rhs = None
    if target is not None:
        rhs, ring = flatten(target)
        order = order if order is not None else ring
    return solve_columns(columns, rhs, order)


def unit_maps(domain, codomain, in_indices=None, out_indices=None):
    """Matrix units E_{o,i} spanning Hom(domain, codomain)."""
    in_indices = list(in_indices if in_indices is not None else _all_indices(domain))
    out_indices = list(out_indices if out_indices is not None else _all_indices(codomain))
    return [
        LinMap(domain, codomain, columns={i: {o: 1}})
        for i in in_indices for o in out_indices
    ]


def combine(maps, coefficients):
    """Σ c_j maps[j]."""
    result = None
    for f, c in zip(maps, coefficients):
        if c == 0:
            continue
        term = f.scale(c)
        result = term if result is None else result + term
    if result is None:
        return LinMap(maps[0].domain, maps[0].codomain)
    return result


def all_indices(spaces):
    return list(_all_indices(spaces))


def fused_space(spaces, name=None, separator='⊗'):
    """A single space for V1⊗...⊗Vk with the isomorphisms to and from the legs.

    Returns (space, fuse, split) with fuse: legs -> space and split its inverse.
    """
    spaces = tuple(spaces)
    indices = list(_all_indices(spaces))
    labels = tuple(separator.join(str(s.labels[k]) for s, k in zip(spaces, idx)) for idx in indices)
    graded = any(s.grades is not None for s in spaces)
    grades = tuple(total_degree(spaces, idx) for idx in indices) if graded else None
    fused = Space(name or separator.join(s.name for s in spaces), labels, grades)
    fuse = LinMap(spaces, (fused,), columns={idx: {(k,): 1} for k, idx in enumerate(indices)})
    split = LinMap((fused,), spaces, columns={(k,): {idx: 1} for k, idx in enumerate(indices)})
    return fused, fuse, split


def invert(f):
    """Two-sided inverse of a square single-leg map, by exact solving."""
    (space,) = f.codomain
    cols = {}
    for j in range(space.dim):
        sol = kernel_and_solve(f, {(j,): 1})
        if sol.kernel:
            raise NoSolution(f"{f!r} is not invertible")
        cols[(j,)] = sol.particular
    return LinMap(f.codomain, f.domain, columns=cols)
