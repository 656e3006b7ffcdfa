"""Pauli-string algebra and fermion-to-qubit mappings.

Strings are stored in symplectic form: a pair of bitmasks (x, z) plus a
power of i, encoding i^p * X^x * Z^z with qubit k at bit k. Y on a qubit is
i * X Z on that qubit. A PauliSum keys its terms by (x, z) and keeps the
coefficient of the Hermitian letters-operator (the one with literal Y
matrices), so a sum is Hermitian exactly when every coefficient is real.

Three mappings are implemented: Jordan-Wigner, the full-register parity
transform, and Bravyi-Kitaev through a Fenwick tree (update, parity, flip
and remainder index sets). A binary-code style transformation is out of
scope and requesting one raises immediately.

Letters order in text form: character k acts on qubit k.
"""

from enum import Enum
from typing import Dict, Iterable, List, Tuple

from .fermion import FermionOperator

DEFAULT_PRUNE_THRESHOLD = 1e-12

_LETTER_FOR = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_BITS_FOR = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_PHASE_POWER = {1: 0, 1j: 1, -1: 2, -1j: 3}
_POWER_PHASE = (1, 1j, -1, -1j)


class MappingKind(Enum):
    JORDAN_WIGNER = "jw"
    PARITY = "parity"
    BRAVYI_KITAEV = "bk"


def mapping_from_name(name: str) -> MappingKind:
    key = name.strip().lower().replace("-", "_")
    aliases = {
        "jw": MappingKind.JORDAN_WIGNER,
        "jordan_wigner": MappingKind.JORDAN_WIGNER,
        "parity": MappingKind.PARITY,
        "bk": MappingKind.BRAVYI_KITAEV,
        "bravyi_kitaev": MappingKind.BRAVYI_KITAEV,
    }
    if key in ("binary", "binary_code", "binarycode"):
        raise ValueError("the binary-code transformation is out of scope; "
                         "choose jw, parity, or bk")
    if key not in aliases:
        raise ValueError(f"unknown mapping {name!r}; choose jw, parity, or bk")
    return aliases[key]


class PauliString:
    """Tensor product of single-qubit Paulis with a unit phase.

    `phase` is restricted to {1, i, -1, -i}; `letters` is a string over
    IXYZ with position k acting on qubit k.
    """

    __slots__ = ("n_qubits", "x", "z", "phase_power")

    def __init__(self, letters: str = "", phase: complex = 1):
        if phase not in _PHASE_POWER:
            raise ValueError(f"phase must be a fourth root of unity, got {phase!r}")
        x = z = 0
        n_y = 0
        for k, ch in enumerate(letters):
            try:
                bx, bz = _BITS_FOR[ch]
            except KeyError:
                raise ValueError(f"invalid Pauli letter {ch!r}") from None
            x |= bx << k
            z |= bz << k
            n_y += bx & bz
        self.n_qubits = len(letters)
        self.x = x
        self.z = z
        self.phase_power = (_PHASE_POWER[phase] + n_y) % 4

    @classmethod
    def from_masks(cls, n_qubits: int, x: int, z: int,
                   phase_power: int) -> "PauliString":
        obj = cls.__new__(cls)
        obj.n_qubits = n_qubits
        obj.x = x
        obj.z = z
        obj.phase_power = phase_power % 4
        return obj

    @property
    def letters(self) -> str:
        return "".join(_LETTER_FOR[((self.x >> k) & 1, (self.z >> k) & 1)]
                       for k in range(self.n_qubits))

    @property
    def phase(self) -> complex:
        n_y = (self.x & self.z).bit_count()
        return _POWER_PHASE[(self.phase_power - n_y) % 4]

    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def __mul__(self, other: "PauliString") -> "PauliString":
        if self.n_qubits != other.n_qubits:
            raise ValueError(
                f"length mismatch: {self.n_qubits} vs {other.n_qubits} qubits")
        power = (self.phase_power + other.phase_power
                 + 2 * (self.z & other.x).bit_count())
        return PauliString.from_masks(self.n_qubits, self.x ^ other.x,
                                      self.z ^ other.z, power)

    def commutes_with(self, other: "PauliString") -> bool:
        if self.n_qubits != other.n_qubits:
            raise ValueError("length mismatch")
        anti = ((self.x & other.z).bit_count()
                + (self.z & other.x).bit_count()) % 2
        return anti == 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, PauliString)
                and self.n_qubits == other.n_qubits
                and self.x == other.x and self.z == other.z
                and self.phase_power == other.phase_power)

    def __hash__(self):
        return hash((self.n_qubits, self.x, self.z, self.phase_power))

    def __repr__(self):
        ph = {1: "+", 1j: "+i", -1: "-", -1j: "-i"}[self.phase]
        return f"PauliString({ph}{self.letters or 'I'})"


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product of two Pauli strings, phase-exact."""
    return a * b


class PauliSum:
    """Complex linear combination of Pauli strings on a fixed register.

    Internally keyed by (x, z); the stored coefficient multiplies the
    Hermitian letters-operator, so `is_hermitian` is a real-coefficient
    check.
    """

    def __init__(self, n_qubits: int,
                 data: Dict[Tuple[int, int], complex] = None):
        self.n_qubits = n_qubits
        self._data: Dict[Tuple[int, int], complex] = dict(data) if data else {}

    # ---- construction ----------------------------------------------------
    @classmethod
    def from_string(cls, string: PauliString, coeff: complex = 1.0) -> "PauliSum":
        out = cls(string.n_qubits)
        out.add_string(string, coeff)
        return out

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls(n_qubits, {(0, 0): coeff})

    def add_string(self, string: PauliString, coeff: complex = 1.0) -> None:
        if string.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        n_y = (string.x & string.z).bit_count()
        c = coeff * _POWER_PHASE[(string.phase_power - n_y) % 4]
        key = (string.x, string.z)
        self._data[key] = self._data.get(key, 0.0) + c

    # ---- inspection --------------------------------------------------------
    def __len__(self) -> int:
        return len(self._data)

    def items(self) -> Iterable[Tuple[Tuple[int, int], complex]]:
        return self._data.items()

    def coefficient(self, letters: str) -> complex:
        s = PauliString(letters)
        if s.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        return self._data.get((s.x, s.z), 0.0)

    def strings(self) -> List[Tuple[PauliString, complex]]:
        """Terms as Hermitian letter strings with their coefficients."""
        out = []
        for (x, z), c in self._data.items():
            n_y = (x & z).bit_count()
            out.append((PauliString.from_masks(self.n_qubits, x, z, n_y), c))
        return out

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return all(abs(c.imag) <= tol for c in self._data.values())

    def norm_l1(self) -> float:
        return sum(abs(c) for c in self._data.values())

    # ---- algebra -----------------------------------------------------------
    def __add__(self, other: "PauliSum") -> "PauliSum":
        if self.n_qubits != other.n_qubits:
            raise ValueError("register size mismatch")
        data = dict(self._data)
        for k, c in other._data.items():
            data[k] = data.get(k, 0.0) + c
        return PauliSum(self.n_qubits, data)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (other * -1.0)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return PauliSum(self.n_qubits,
                            {k: c * other for k, c in self._data.items()})
        if self.n_qubits != other.n_qubits:
            raise ValueError("register size mismatch")
        data: Dict[Tuple[int, int], complex] = {}
        for (x1, z1), c1 in self._data.items():
            y1 = (x1 & z1).bit_count()
            for (x2, z2), c2 in other._data.items():
                y2 = (x2 & z2).bit_count()
                x3 = x1 ^ x2
                z3 = z1 ^ z2
                y3 = (x3 & z3).bit_count()
                power = (y1 + y2 - y3 + 2 * (z1 & x2).bit_count()) % 4
                key = (x3, z3)
                data[key] = data.get(key, 0.0) + c1 * c2 * _POWER_PHASE[power]
        return PauliSum(self.n_qubits, data)

    __rmul__ = __mul__

    def simplify(self, threshold: float = DEFAULT_PRUNE_THRESHOLD) -> "PauliSum":
        """Drop terms with |coefficient| <= threshold."""
        return PauliSum(self.n_qubits,
                        {k: c for k, c in self._data.items()
                         if abs(c) > threshold})

    # ---- text round trip -----------------------------------------------------
    def to_text(self) -> str:
        """One `<re> <im> <letters>` line per term, sorted by letters."""
        rows = []
        for (x, z), c in self._data.items():
            n_y = (x & z).bit_count()
            letters = PauliString.from_masks(self.n_qubits, x, z, n_y).letters
            rows.append((letters, c))
        rows.sort(key=lambda t: t[0])
        return "\n".join(f"{c.real!r} {c.imag!r} {letters}"
                         for letters, c in rows)

    @classmethod
    def from_text(cls, text: str) -> "PauliSum":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty Pauli-sum text")
        n_qubits = None
        out = None
        for ln in lines:
            parts = ln.split()
            if len(parts) != 3:
                raise ValueError(f"malformed line {ln!r}")
            re_c, im_c, letters = float(parts[0]), float(parts[1]), parts[2]
            if n_qubits is None:
                n_qubits = len(letters)
                out = cls(n_qubits)
            elif len(letters) != n_qubits:
                raise ValueError("inconsistent register sizes in text")
            out.add_string(PauliString(letters), complex(re_c, im_c))
        return out


# ---- Fenwick tree for the Bravyi-Kitaev transform ---------------------------

class FenwickTree:
    """Partial-sum tree over mode indices, rooted at index n - 1."""

    def __init__(self, n_modes: int):
        self.n_modes = n_modes
        self.parent = [-1] * n_modes
        self.children: List[List[int]] = [[] for _ in range(n_modes)]

        def build(left: int, right: int, parent: int) -> None:
            if left >= right:
                return
            pivot = (left + right) >> 1
            self.parent[pivot] = parent
            self.children[parent].append(pivot)
            build(left, pivot, pivot)
            build(pivot + 1, right, parent)

        if n_modes > 0:
            build(0, n_modes - 1, n_modes - 1)

    def update_set(self, j: int) -> List[int]:
        """Strict ancestors of j."""
        out = []
        node = self.parent[j]
        while node != -1:
            out.append(node)
            node = self.parent[node]
        return out

    def flip_set(self, j: int) -> List[int]:
        """Direct children of j."""
        return list(self.children[j])

    def remainder_set(self, j: int) -> List[int]:
        """Children with index < j of every ancestor of j."""
        out = []
        for anc in self.update_set(j):
            for ch in self.children[anc]:
                if ch < j:
                    out.append(ch)
        return out

    def parity_set(self, j: int) -> List[int]:
        """Nodes whose stored sums give the parity of modes < j."""
        return sorted(set(self.flip_set(j)) | set(self.remainder_set(j)))

    def subtree(self, j: int) -> List[int]:
        """j together with all of its descendants."""
        out = []
        stack = [j]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(self.children[node])
        return sorted(out)


# ---- ladder-operator images --------------------------------------------------

def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _ladder_image(kind: MappingKind, index: int, dagger: bool,
                  n_modes: int) -> PauliSum:
    """Qubit image of a single creation or annihilation operator.

    Both branches are (X-like - i Y-like)/2 for a_i^ and the conjugate for
    a_i; only the support masks differ between the mappings.
    """
    if not 0 <= index < n_modes:
        raise ValueError(f"mode index {index} outside register of {n_modes}")
    if kind == MappingKind.JORDAN_WIGNER:
        below = _mask(range(index))
        x_branch = (1 << index, below)            # Z on all lower qubits
        y_branch = (1 << index, below | (1 << index))
    elif kind == MappingKind.PARITY:
        above = _mask(range(index + 1, n_modes))
        zprev = (1 << (index - 1)) if index > 0 else 0
        x_branch = (above | (1 << index), zprev)  # X on higher, X_i, Z_{i-1}
        y_branch = (above | (1 << index), 1 << index)
    elif kind == MappingKind.BRAVYI_KITAEV:
        tree = _fenwick(n_modes)
        upd = _mask(tree.update_set(index))
        par = _mask(tree.parity_set(index))
        rem = _mask(tree.remainder_set(index))
        x_branch = (upd | (1 << index), par)
        y_branch = (upd | (1 << index), rem | (1 << index))
    else:
        raise ValueError(f"unsupported mapping {kind}")

    sign = -1.0 if dagger else 1.0
    out = PauliSum(n_modes)
    xb_x, xb_z = x_branch
    yb_x, yb_z = y_branch
    # X-like branch: coefficient +1/2 of i^{y} X^x Z^z with y Ys
    out.add_string(PauliString.from_masks(n_modes, xb_x, xb_z,
                                          (xb_x & xb_z).bit_count()), 0.5)
    out.add_string(PauliString.from_masks(n_modes, yb_x, yb_z,
                                          (yb_x & yb_z).bit_count()),
                   sign * 0.5j)
    return out


_FENWICK_CACHE: Dict[int, FenwickTree] = {}
_IMAGE_CACHE: Dict[Tuple[MappingKind, int, int, bool], PauliSum] = {}


def _fenwick(n_modes: int) -> FenwickTree:
    if n_modes not in _FENWICK_CACHE:
        _FENWICK_CACHE[n_modes] = FenwickTree(n_modes)
    return _FENWICK_CACHE[n_modes]


def ladder_image(kind: MappingKind, index: int, dagger: bool,
                 n_modes: int) -> PauliSum:
    key = (kind, n_modes, index, bool(dagger))
    if key not in _IMAGE_CACHE:
        _IMAGE_CACHE[key] = _ladder_image(kind, index, dagger, n_modes)
    return _IMAGE_CACHE[key]


def map_fermion(op: FermionOperator, kind: MappingKind, n_modes: int,
                threshold: float = DEFAULT_PRUNE_THRESHOLD) -> PauliSum:
    """Map a fermionic operator to a qubit operator on n_modes qubits."""
    total = PauliSum(n_modes)
    for key, coeff in op.terms.items():
        if not key:
            ident = PauliSum.identity(n_modes, coeff)
            total = total + ident
            continue
        prod = None
        for index, dagger in key:
            img = ladder_image(kind, index, dagger, n_modes)
            prod = img if prod is None else prod * img
        total = total + prod * coeff
    return total.simplify(threshold)


def anticommutation_check(kind: MappingKind, n_modes: int) -> float:
    """Largest violation of the canonical anticommutation relations.

    Checks {a_i, a_j^} = delta_ij, {a_i, a_j} = 0 and {a_i^, a_j^} = 0 for
    all pairs, measured as the l1 norm of the residual operator.
    """
    worst = 0.0
    lower = [ladder_image(kind, i, False, n_modes) for i in range(n_modes)]
    raise_ = [ladder_image(kind, i, True, n_modes) for i in range(n_modes)]
    for i in range(n_modes):
        for j in range(n_modes):
            d1 = lower[i] * raise_[j] + raise_[j] * lower[i]
            if i == j:
                d1 = d1 - PauliSum.identity(n_modes)
            worst = max(worst, d1.simplify(0.0).norm_l1())
            d2 = lower[i] * lower[j] + lower[j] * lower[i]
            worst = max(worst, d2.simplify(0.0).norm_l1())
            d3 = raise_[i] * raise_[j] + raise_[j] * raise_[i]
            worst = max(worst, d3.simplify(0.0).norm_l1())
    return worst


def encode_occupation(kind: MappingKind, occupied: Iterable[int],
                      n_modes: int) -> List[int]:
    """Qubits set to 1 in the encoded basis state of a given determinant.

    For Jordan-Wigner these are the occupied modes themselves; for parity,
    running prefix parities; for Bravyi-Kitaev, subtree parities of the
    Fenwick tree.
    """
    occ = [0] * n_modes
    for m in occupied:
        if not 0 <= m < n_modes:
            raise ValueError(f"mode {m} outside register")
        occ[m] = 1
    if kind == MappingKind.JORDAN_WIGNER:
        bits = occ
    elif kind == MappingKind.PARITY:
        bits = []
        run = 0
        for m in range(n_modes):
            run ^= occ[m]
            bits.append(run)
    elif kind == MappingKind.BRAVYI_KITAEV:
        tree = _fenwick(n_modes)
        bits = [sum(occ[k] for k in tree.subtree(j)) % 2
                for j in range(n_modes)]
    else:
        raise ValueError(f"unsupported mapping {kind}")
    return [q for q, b in enumerate(bits) if b]


# ---- parity two-qubit reduction ----------------------------------------------

def taper_parity_two_qubits(op: FermionOperator, n_modes: int,
                            n_electrons: int, two_s_z: int = 0,
                            threshold: float = DEFAULT_PRUNE_THRESHOLD) -> PauliSum:
    """Parity-map with spin-blocked ordering and drop the two fixed qubits.

    Under a blocked (all alpha, then all beta) mode order, the parity
    encoding stores the alpha-sector parity on qubit n/2 - 1 and the total
    parity on qubit n - 1. Both are constants of motion once the particle
    number and S_z sector are fixed, so their Z eigenvalues are substituted
    and the qubits removed. The register shrinks by two; the remaining
    qubit order is preserved.

    Only valid for operators that conserve both symmetries; anything with
    X or Y support on the fixed qubits raises.
    """
    if n_modes % 2 != 0:
        raise ValueError("parity reduction needs an even register")
    if (n_electrons + two_s_z) % 2 != 0:
        raise ValueError("n_electrons + 2*S_z must be even")
    n_alpha = (n_electrons + two_s_z) // 2
    if not 0 <= n_alpha <= n_electrons:
        raise ValueError(f"unphysical sector: n_alpha = {n_alpha}")

    half = n_modes // 2

    def blocked(m: int) -> int:
        return m // 2 if m % 2 == 0 else half + m // 2

    relabeled = FermionOperator(
        {tuple((blocked(i), d) for i, d in key): c
         for key, c in op.terms.items()})
    mapped = map_fermion(relabeled, MappingKind.PARITY, n_modes, threshold)

    k1 = half - 1
    k2 = n_modes - 1
    s1 = -1.0 if n_alpha % 2 else 1.0
    s2 = -1.0 if n_electrons % 2 else 1.0

    out = PauliSum(n_modes - 2)
    for (x, z), c in mapped.items():
        if (x >> k1) & 1 or (x >> k2) & 1:
            raise ValueError(
                "operator does not commute with the tapered symmetries")
        factor = 1.0
        if (z >> k1) & 1:
            factor *= s1
        if (z >> k2) & 1:
            factor *= s2
        xr = _drop_bits(x, (k1, k2))
        zr = _drop_bits(z, (k1, k2))
        n_y = (xr & zr).bit_count()
        out.add_string(PauliString.from_masks(n_modes - 2, xr, zr, n_y),
                       c * factor)
    return out.simplify(threshold)


def _drop_bits(mask: int, positions) -> int:
    """Remove the given bit positions and close the gaps."""
    out = 0
    out_bit = 0
    for k in range(max(mask.bit_length(), max(positions) + 1)):
        if k in positions:
            continue
        if (mask >> k) & 1:
            out |= 1 << out_bit
        out_bit += 1
    return out
