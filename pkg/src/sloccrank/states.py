"""n-qudit pure states with exact sparse amplitudes.

States live on a dimension vector (d_1, ..., d_n), n >= 2, d_k >= 2, and are
stored as a map from flat basis index to a nonzero ComplexRational amplitude.
Generators are unnormalized (amplitude 1 per term): every quantity computed
downstream is a matrix rank, which is invariant under global scaling, and
integer amplitudes keep the arithmetic exact.

Site labels are 1-based throughout; flat indices are 0-based.
"""

from __future__ import annotations

import json
from itertools import combinations
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .scalars import ComplexRational, format_rational, parse_rational

Dims = Tuple[int, ...]
MultiIndex = Tuple[int, ...]


class InvalidIndexError(ValueError):
    """Multi-index digit or flat index out of range for the dims."""


class ZeroStateError(ValueError):
    """The all-zero amplitude vector was produced or requested."""


class StateFormatError(ValueError):
    """State JSON violates the schema."""


def check_dims(dims: Sequence[int]) -> Dims:
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise ValueError(f"need at least 2 sites, got dims={dims}")
    if any(d < 2 for d in dims):
        raise ValueError(f"every local dimension must be >= 2, got dims={dims}")
    return dims


def total_dim(dims: Sequence[int]) -> int:
    out = 1
    for d in dims:
        out *= d
    return out


def flat_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    """Lexicographic (big-endian mixed radix) flat index of a multi-index."""
    if len(digits) != len(dims):
        raise InvalidIndexError(
            f"multi-index length {len(digits)} != number of sites {len(dims)}"
        )
    i = 0
    for s, d in zip(digits, dims):
        if not 0 <= s < d:
            raise InvalidIndexError(f"digit {s} out of range for dimension {d}")
        i = i * d + s
    return i


def multiindex_of(i: int, dims: Sequence[int]) -> MultiIndex:
    """Inverse of flat_index."""
    D = total_dim(dims)
    if not 0 <= i < D:
        raise InvalidIndexError(f"flat index {i} out of range [0, {D})")
    digits = []
    for d in reversed(dims):
        digits.append(i % d)
        i //= d
    return tuple(reversed(digits))


class QuditState:
    """Immutable sparse n-qudit pure state (unnormalized)."""

    __slots__ = ("dims", "amplitudes")

    def __init__(self, dims: Sequence[int], amplitudes: Mapping[int, ComplexRational]):
        dims = check_dims(dims)
        D = total_dim(dims)
        amps: Dict[int, ComplexRational] = {}
        for i, a in amplitudes.items():
            if not 0 <= i < D:
                raise InvalidIndexError(f"flat index {i} out of range [0, {D})")
            if not isinstance(a, ComplexRational):
                a = ComplexRational(a)
            if not a.is_zero():
                amps[int(i)] = a
        if not amps:
            raise ZeroStateError("state has no nonzero amplitude")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("QuditState is immutable")

    @property
    def n(self) -> int:
        return len(self.dims)

    def amplitude(self, index) -> ComplexRational:
        """Amplitude at a flat index or multi-index (zero if absent)."""
        from .scalars import ZERO

        if not isinstance(index, int):
            index = flat_index(index, self.dims)
        return self.amplitudes.get(index, ZERO)

    def terms(self) -> Iterable[Tuple[MultiIndex, ComplexRational]]:
        for i in sorted(self.amplitudes):
            yield multiindex_of(i, self.dims), self.amplitudes[i]

    def __eq__(self, other):
        if not isinstance(other, QuditState):
            return NotImplemented
        return self.dims == other.dims and self.amplitudes == other.amplitudes

    def __hash__(self):
        return hash((self.dims, frozenset(self.amplitudes.items())))

    def __repr__(self):
        return f"QuditState(dims={self.dims}, terms={len(self.amplitudes)})"


def permute_qudits(state: QuditState, perm: Sequence[int]) -> QuditState:
    """Reorder sites: new position i holds the original site perm[i] (1-based).

    Output dims are the permuted dims; the amplitude of a basis state follows
    its digits. Applying the inverse permutation restores the input exactly.
    """
    n = state.n
    perm = tuple(int(p) for p in perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"perm {perm} is not a permutation of 1..{n}")
    new_dims = tuple(state.dims[p - 1] for p in perm)
    new_amps: Dict[int, ComplexRational] = {}
    for i, a in state.amplitudes.items():
        digits = multiindex_of(i, state.dims)
        new_digits = tuple(digits[p - 1] for p in perm)
        new_amps[flat_index(new_digits, new_dims)] = a
    return QuditState(new_dims, new_amps)


def invert_permutation(perm: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(perm)
    for pos, site in enumerate(perm):
        inv[site - 1] = pos + 1
    return tuple(inv)


# ---------------------------------------------------------------------------
# canonical state generators
# ---------------------------------------------------------------------------

def gen_ghz(n: int, d: int) -> QuditState:
    """GHZ state on n qudits of dimension d: sum_j |j...j> (unnormalized)."""
    if n < 2 or d < 2:
        raise ValueError(f"GHZ needs n >= 2 and d >= 2, got n={n}, d={d}")
    dims = (d,) * n
    one = ComplexRational(1)
    amps = {flat_index((j,) * n, dims): one for j in range(d)}
    return QuditState(dims, amps)


def gen_w(n: int) -> QuditState:
    """n-qubit W state: sum over single excitations (unnormalized)."""
    if n < 2:
        raise ValueError(f"W needs n >= 2, got n={n}")
    dims = (2,) * n
    one = ComplexRational(1)
    amps = {}
    for k in range(n):
        digits = [0] * n
        digits[k] = 1
        amps[flat_index(digits, dims)] = one
    return QuditState(dims, amps)


def _symmetric_state(levels: int, n: int, counts: Sequence[int]) -> QuditState:
    """Equal superposition over all arrangements of the given level counts."""
    dims = (levels,) * n
    one = ComplexRational(1)
    amps: Dict[int, ComplexRational] = {}
    # place level 1, then 2, ... into the free positions; the remainder is 0s
    def place(level: int, free: Tuple[int, ...], digits: list) -> None:
        if level > len(counts):
            amps[flat_index(digits, dims)] = one
            return
        c = counts[level - 1]
        for positions in combinations(free, c):
            for p in positions:
                digits[p] = level
            rest = tuple(p for p in free if p not in positions)
            place(level + 1, rest, digits)
            for p in positions:
                digits[p] = 0

    place(1, tuple(range(n)), [0] * n)
    return QuditState(dims, amps)


def gen_dicke3(n: int, l1: int, l2: int) -> QuditState:
    """Three-level Dicke state with l1 ones, l2 twos, n-l1-l2 zeros."""
    if l1 < 0 or l2 < 0 or l1 + l2 > n - 1:
        raise ValueError(
            f"need l1, l2 >= 0 and l1+l2 <= n-1, got n={n}, l1={l1}, l2={l2}"
        )
    return _symmetric_state(3, n, (l1, l2))


def gen_dicke4(n: int, l1: int, l2: int, l3: int) -> QuditState:
    """Four-level Dicke state with occupations (l1, l2, l3) and zeros filling."""
    if min(l1, l2, l3) < 0 or l1 + l2 + l3 > n - 1:
        raise ValueError(
            f"need l1, l2, l3 >= 0 and l1+l2+l3 <= n-1, "
            f"got n={n}, l1={l1}, l2={l2}, l3={l3}"
        )
    return _symmetric_state(4, n, (l1, l2, l3))


# ---------------------------------------------------------------------------
# state JSON format
# ---------------------------------------------------------------------------

def state_to_json(state: QuditState) -> dict:
    return {
        "dims": list(state.dims),
        "amplitudes": [
            {
                "index": list(mi),
                "re": format_rational(a.re),
                "im": format_rational(a.im),
            }
            for mi, a in state.terms()
        ],
    }


def state_from_json(obj) -> QuditState:
    """Strict parser for the state JSON schema.

    Unknown fields, duplicate indices, malformed rationals, out-of-range
    digits and the zero state are all rejected with distinct messages.
    """
    if not isinstance(obj, dict):
        raise StateFormatError("state document must be a JSON object")
    unknown = set(obj) - {"dims", "amplitudes"}
    if unknown:
        raise StateFormatError(f"unknown fields: {sorted(unknown)}")
    if "dims" not in obj or "amplitudes" not in obj:
        raise StateFormatError("state document needs 'dims' and 'amplitudes'")
    try:
        dims = check_dims(obj["dims"])
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"bad dims: {exc}") from exc
    if not isinstance(obj["amplitudes"], list):
        raise StateFormatError("'amplitudes' must be an array")
    amps: Dict[int, ComplexRational] = {}
    for pos, entry in enumerate(obj["amplitudes"]):
        if not isinstance(entry, dict):
            raise StateFormatError(f"amplitude #{pos} must be an object")
        unknown = set(entry) - {"index", "re", "im"}
        if unknown:
            raise StateFormatError(
                f"amplitude #{pos}: unknown fields {sorted(unknown)}"
            )
        if "index" not in entry:
            raise StateFormatError(f"amplitude #{pos}: missing 'index'")
        try:
            i = flat_index(entry["index"], dims)
        except (InvalidIndexError, TypeError) as exc:
            raise StateFormatError(f"amplitude #{pos}: {exc}") from exc
        if i in amps:
            raise StateFormatError(
                f"amplitude #{pos}: duplicate index {list(entry['index'])}"
            )
        try:
            re = parse_rational(str(entry.get("re", "0")))
            im = parse_rational(str(entry.get("im", "0")))
        except ValueError as exc:
            raise StateFormatError(f"amplitude #{pos}: {exc}") from exc
        amps[i] = ComplexRational(re, im)
    amps = {i: a for i, a in amps.items() if not a.is_zero()}
    if not amps:
        raise ZeroStateError("state file contains no nonzero amplitude")
    return QuditState(dims, amps)


def save_state(state: QuditState, path) -> None:
    with open(path, "w") as fh:
        json.dump(state_to_json(state), fh, indent=1)
        fh.write("\n")


def load_state(path) -> QuditState:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise StateFormatError(f"{path}: invalid JSON: {exc}") from exc
    return state_from_json(obj)
