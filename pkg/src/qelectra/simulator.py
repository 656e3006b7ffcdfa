"""Dense statevector simulation of Pauli operators and circuits.

Basis states use little-endian convention: computational index b has qubit
k in bit k of b. The register is capped at 24 qubits, above which the
amplitude array alone would pass two gigabytes.

Pauli application never builds a matrix. In the symplectic picture
(X^x Z^z)|b> = (-1)^{|z & b|} |b ^ x>, so a string acts as one permutation
of the amplitude array plus a sign mask, with bit-parity evaluated by
folding.
"""

import numpy as np
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .pauli import PauliString, PauliSum

MAX_QUBITS = 24

_POWER_PHASE = (1.0, 1.0j, -1.0, -1.0j)

_SQ_HALF = 1.0 / np.sqrt(2.0)
_H_GATE = np.array([[_SQ_HALF, _SQ_HALF], [_SQ_HALF, -_SQ_HALF]],
                   dtype=complex)
# H S^dagger rotates the Y eigenbasis onto the computational basis
_Y_BASIS_GATE = _H_GATE @ np.diag([1.0, -1.0j])


def _bit_parity(values: np.ndarray) -> np.ndarray:
    """Parity of the set bits of each entry (values must be < 2**63)."""
    v = values.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> shift
    return (v & 1).astype(np.int8)


class StateVector:
    """Normalized complex amplitude vector over a little-endian register."""

    def __init__(self, n_qubits: int, data: Optional[np.ndarray] = None):
        if n_qubits < 1 or n_qubits > MAX_QUBITS:
            raise ValueError(
                f"register size {n_qubits} outside supported range "
                f"1..{MAX_QUBITS}")
        self.n_qubits = n_qubits
        dim = 1 << n_qubits
        if data is None:
            self.data = np.zeros(dim, dtype=complex)
            self.data[0] = 1.0
        else:
            arr = np.asarray(data, dtype=complex)
            if arr.shape != (dim,):
                raise ValueError(f"amplitude array must have shape ({dim},)")
            self.data = arr.copy()

    @classmethod
    def computational_basis(cls, n_qubits: int, index: int) -> "StateVector":
        sv = cls(n_qubits)
        if not 0 <= index < (1 << n_qubits):
            raise ValueError("basis index out of range")
        sv.data[0] = 0.0
        sv.data[index] = 1.0
        return sv

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.data)

    def norm(self) -> float:
        return float(np.linalg.norm(self.data))

    # ---- Pauli action --------------------------------------------------------
    def _string_image(self, string: PauliString) -> np.ndarray:
        if string.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        idx = np.arange(self.data.size, dtype=np.int64)
        signs = 1.0 - 2.0 * _bit_parity(idx & string.z)
        out = np.empty_like(self.data)
        out[idx ^ string.x] = signs * self.data
        return out * _POWER_PHASE[string.phase_power % 4]

    def apply_pauli(self, string: PauliString) -> None:
        self.data = self._string_image(string)

    def apply_x(self, qubit: int) -> None:
        """Flip one qubit (used to prepare occupation-encoded references)."""
        if not 0 <= qubit < self.n_qubits:
            raise ValueError("qubit index out of range")
        idx = np.arange(self.data.size, dtype=np.int64)
        self.data = self.data[idx ^ (1 << qubit)]

    def apply_single_qubit(self, qubit: int, gate: np.ndarray) -> None:
        step = 1 << qubit
        work = self.data.reshape(-1, 2, step)
        top = work[:, 0, :].copy()
        bot = work[:, 1, :].copy()
        work[:, 0, :] = gate[0, 0] * top + gate[0, 1] * bot
        work[:, 1, :] = gate[1, 0] * top + gate[1, 1] * bot

    def apply_pauli_exponential(self, string: PauliString,
                                angle: float) -> None:
        """Apply exp(-i * angle / 2 * P) for an involutory Pauli string.

        Requires the string phase to be +1 or -1 so that P is Hermitian;
        a -1 phase is folded into the angle.
        """
        n_y = (string.x & string.z).bit_count()
        rel = (string.phase_power - n_y) % 4
        if rel == 2:
            angle = -angle
        elif rel != 0:
            raise ValueError("exponential needs a Hermitian string "
                             "(phase +1 or -1)")
        hermitian = PauliString.from_masks(self.n_qubits, string.x, string.z,
                                           n_y)
        half = 0.5 * angle
        image = self._string_image(hermitian)
        self.data = np.cos(half) * self.data - 1.0j * np.sin(half) * image

    # ---- expectation values -----------------------------------------------------
    def expectation(self, observable: Union[PauliString, PauliSum],
                    imag_tol: float = 1e-10) -> float:
        """Exact <psi|O|psi>; raises if a nominally real value comes out
        complex."""
        if isinstance(observable, PauliString):
            obs = PauliSum.from_string(observable)
        else:
            obs = observable
        if obs.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        idx = np.arange(self.data.size, dtype=np.int64)
        total = 0.0 + 0.0j
        conj = np.conj(self.data)
        for (x, z), coeff in obs.items():
            n_y = (x & z).bit_count()
            signs = 1.0 - 2.0 * _bit_parity(idx & z)
            overlap = np.dot(conj[idx ^ x], signs * self.data)
            total += coeff * _POWER_PHASE[n_y % 4] * overlap
        if abs(total.imag) > imag_tol * max(1.0, abs(total.real)):
            raise ValueError(
                f"expectation has imaginary part {total.imag:.3e}; "
                "observable is not Hermitian on this state")
        return float(total.real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.data) ** 2

    def sampled_expectation(self, observable: PauliSum, shots: int,
                            rng: Optional[np.random.Generator] = None,
                            seed: Optional[int] = None
                            ) -> Tuple[float, float]:
        """Estimate <O> by simulated projective measurement.

        Each non-identity term is measured in its own rotated basis with
        `shots` repetitions; identity terms enter exactly. Returns the
        estimate and its standard error (square root of the summed
        per-term variances of the mean).
        """
        if shots < 1:
            raise ValueError("shots must be positive")
        if observable.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        if not observable.is_hermitian():
            raise ValueError("sampling needs a Hermitian observable")
        if rng is None:
            rng = np.random.default_rng(seed)
        mean_total = 0.0
        var_total = 0.0
        idx = np.arange(self.data.size, dtype=np.int64)
        for (x, z), coeff in observable.items():
            c = coeff.real
            if x == 0 and z == 0:
                mean_total += c
                continue
            rotated = self.copy()
            for k in range(self.n_qubits):
                xb = (x >> k) & 1
                zb = (z >> k) & 1
                if xb and zb:
                    rotated.apply_single_qubit(k, _Y_BASIS_GATE)
                elif xb:
                    rotated.apply_single_qubit(k, _H_GATE)
            support = x | z
            probs = rotated.probabilities()
            probs = probs / probs.sum()
            outcomes = rng.choice(probs.size, size=shots, p=probs)
            values = 1.0 - 2.0 * _bit_parity(outcomes & support)
            term_mean = float(values.mean())
            term_var = float(values.var(ddof=1)) if shots > 1 else 0.0
            mean_total += c * term_mean
            var_total += c * c * term_var / shots
        return mean_total, float(np.sqrt(var_total))


# ---- circuits ------------------------------------------------------------------

@dataclass
class Instruction:
    """One circuit element.

    kind "x": flip `qubit`. kind "exp": apply
    exp(-i * (scale * theta[param_index]) / 2 * string).
    """
    kind: str
    qubit: int = -1
    string: Optional[PauliString] = None
    param_index: int = -1
    scale: float = 1.0


@dataclass
class Circuit:
    """Parametrized sequence of X flips and Pauli exponentials."""
    n_qubits: int
    instructions: List[Instruction] = field(default_factory=list)
    n_parameters: int = 0

    def add_x(self, qubit: int) -> None:
        self.instructions.append(Instruction(kind="x", qubit=qubit))

    def add_exponential(self, string: PauliString, param_index: int,
                        scale: float = 1.0) -> None:
        if string.n_qubits != self.n_qubits:
            raise ValueError("register size mismatch")
        if param_index < 0:
            raise ValueError("parameter index must be non-negative")
        self.instructions.append(Instruction(kind="exp", string=string,
                                             param_index=param_index,
                                             scale=scale))
        self.n_parameters = max(self.n_parameters, param_index + 1)

    def run(self, parameters: Sequence[float],
            initial: Optional[StateVector] = None) -> StateVector:
        theta = np.asarray(parameters, dtype=float)
        if theta.shape != (self.n_parameters,):
            raise ValueError(
                f"expected {self.n_parameters} parameters, got {theta.shape}")
        state = StateVector(self.n_qubits) if initial is None else initial.copy()
        for ins in self.instructions:
            if ins.kind == "x":
                state.apply_x(ins.qubit)
            elif ins.kind == "exp":
                angle = ins.scale * theta[ins.param_index]
                state.apply_pauli_exponential(ins.string, angle)
            else:
                raise ValueError(f"unknown instruction kind {ins.kind!r}")
        return state


def reference_state(n_qubits: int, set_qubits: Iterable[int]) -> StateVector:
    """Basis state with the listed qubits set to 1."""
    index = 0
    for q in set_qubits:
        if not 0 <= q < n_qubits:
            raise ValueError(f"qubit {q} outside register")
        index |= 1 << q
    return StateVector.computational_basis(n_qubits, index)
