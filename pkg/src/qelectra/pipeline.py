"""Assembly line from a molecular geometry to a qubit Hamiltonian.

One call wires the whole chain together: basis lookup, integral
evaluation, restricted Hartree-Fock, the optional active-space window,
second quantization and the fermion-to-qubit mapping. The module also
carries the registry of shipped example molecules with their default
active spaces, chosen so the minimal-basis method comparison stays
representative while every system remains exactly diagonalizable.
"""

import os
import numpy as np
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Optional, Tuple, Union

from .molecule import Molecule, from_atom_list, load_xyz, parse_xyz
from .integrals import compute_integrals, IntegralSet
from .scf import ScfConfig, ScfResult, run_rhf
from .fermion import (ActiveSpaceSpec, FermionOperator, SpinOrbitalIntegrals,
                      build_hamiltonian, mo_spatial_integrals,
                      spatial_active_space, to_spin_orbitals)
from .pauli import MappingKind, PauliSum, map_fermion
from .simulator import MAX_QUBITS

THREADS_ENV = "QELECTRA_THREADS"

# Active windows keyed by canonical formula: (n_active_electrons,
# n_active_spatial_orbitals). Three constraints shape these. The window
# must keep each example inside the exact-diagonalization range (<= 12
# qubits). Its boundaries should not split a degenerate shell (the e pair
# of NH3, the t2 triples of CH4): a window cutting through a degenerate
# shell selects an arbitrary rotation of that subspace, so its correlation
# energy changes when the molecule is merely reoriented in the input file.
# And the retained correlation must stay within the ~50 mHa single-
# reference regime these comparisons illustrate. CO2 cannot satisfy the
# last two at once (every whole-shell window containing the pi* pair
# carries ~72 mHa of static correlation), so it keeps a boundary through
# the pi shells and its correlation energy is convention-dependent at the
# few-mHa level; the other five windows are rotation-invariant.
DEFAULT_ACTIVE_SPACES: Dict[str, Tuple[int, int]] = {
    "H2": (2, 2),
    "HLi": (2, 5),
    "H2O": (8, 6),
    "H3N": (8, 5),
    "CH4": (6, 6),
    "CO2": (8, 5),
}

# canonical formula -> conventional display name where they differ
DISPLAY_NAMES: Dict[str, str] = {
    "HLi": "LiH",
    "H3N": "NH3",
}

SHIPPED_MOLECULES: Dict[str, str] = {
    "h2": "H2",
    "lih": "LiH",
    "h2o": "H2O",
    "nh3": "NH3",
    "ch4": "CH4",
    "co2": "CO2",
}


def canonical_formula(molecule: Molecule) -> str:
    """Hill-convention formula: C, then H, then the rest alphabetically."""
    counts: Dict[str, int] = {}
    for atom in molecule.atoms:
        counts[atom.symbol] = counts.get(atom.symbol, 0) + 1

    def rank(symbol: str):
        return (symbol != "C", symbol != "H", symbol)

    parts = []
    for symbol in sorted(counts, key=rank):
        n = counts[symbol]
        parts.append(symbol + (str(n) if n > 1 else ""))
    return "".join(parts)


def display_name(molecule: Molecule) -> str:
    formula = canonical_formula(molecule)
    return molecule.name or DISPLAY_NAMES.get(formula, formula)


def default_active_space(molecule: Molecule) -> Optional[ActiveSpaceSpec]:
    """Registry lookup; None means use the full orbital space."""
    window = DEFAULT_ACTIVE_SPACES.get(canonical_formula(molecule))
    if window is None:
        return None
    return ActiveSpaceSpec(*window)


def shipped_geometry(name: str) -> Molecule:
    """Load one of the packaged example molecules by short name."""
    key = name.strip().lower()
    if key not in SHIPPED_MOLECULES:
        raise ValueError(
            f"unknown shipped molecule {name!r}; available: "
            + ", ".join(SHIPPED_MOLECULES))
    text = (resources.files("qelectra") / "geometries"
            / f"{key}.xyz").read_text()
    return parse_xyz(text, name=SHIPPED_MOLECULES[key])


def load_molecule_argument(argument: str) -> Molecule:
    """Resolve a CLI molecule argument: a file path or a shipped name."""
    if os.path.exists(argument):
        return load_xyz(argument)
    if argument.strip().lower() in SHIPPED_MOLECULES:
        return shipped_geometry(argument)
    raise FileNotFoundError(
        f"no such file {argument!r} and it is not a shipped molecule name "
        f"({', '.join(SHIPPED_MOLECULES)})")


def thread_cap(default: int = 4) -> int:
    """Worker limit for concurrent scan points."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return max(1, min(default, os.cpu_count() or 1))
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be at least 1")
    return value


@dataclass
class AssembledSystem:
    """Everything the methods need, computed once per geometry."""
    molecule: Molecule
    basis_name: str
    integrals: IntegralSet
    scf: ScfResult
    h_mo: np.ndarray
    eri_mo: np.ndarray
    active_space: Optional[ActiveSpaceSpec]
    spin_orbitals: SpinOrbitalIntegrals
    hamiltonian: FermionOperator
    mapping: MappingKind
    qubit_hamiltonian: PauliSum

    @property
    def n_qubits(self) -> int:
        return self.spin_orbitals.n_orbitals

    @property
    def e_hf(self) -> float:
        return self.scf.e_total

    def active_integrals(self):
        """Spatial integrals of the active window, for file export."""
        if self.active_space is None:
            n_e = self.molecule.n_electrons
            return self.h_mo, self.eri_mo, self.integrals.nuclear_repulsion, n_e
        return spatial_active_space(self.h_mo, self.eri_mo,
                                    self.integrals.nuclear_repulsion,
                                    self.molecule.n_electrons,
                                    self.active_space)


_AUTO = "auto"


def assemble(molecule: Molecule, basis: str = "sto-3g",
             active: Union[str, None, ActiveSpaceSpec] = _AUTO,
             mapping: MappingKind = MappingKind.PARITY,
             scf_config: Optional[ScfConfig] = None) -> AssembledSystem:
    """Run the full chain up to the qubit Hamiltonian.

    `active` accepts an ActiveSpaceSpec, None for the full orbital space,
    or "auto" (default) to consult the shipped registry and fall back to
    the full space.
    """
    if isinstance(active, str):
        if active != _AUTO:
            raise ValueError(f"unrecognized active-space setting {active!r}")
        spec = default_active_space(molecule)
    else:
        spec = active

    integrals = compute_integrals(molecule, basis)
    scf = run_rhf(integrals, molecule.n_electrons,
                  config=scf_config or ScfConfig())
    h_mo, eri_mo = mo_spatial_integrals(integrals, scf.mo_coefficients)
    if spec is None:
        so = to_spin_orbitals(h_mo, eri_mo, integrals.nuclear_repulsion,
                              molecule.n_electrons)
    else:
        h_act, eri_act, core_act, n_act = spatial_active_space(
            h_mo, eri_mo, integrals.nuclear_repulsion,
            molecule.n_electrons, spec)
        so = to_spin_orbitals(h_act, eri_act, core_act, n_act)
    if so.n_orbitals > MAX_QUBITS:
        raise ValueError(
            f"{so.n_orbitals} qubits exceeds the simulator cap of "
            f"{MAX_QUBITS}; restrict the problem with an active space "
            f"(for example --active-space 8,6)")
    hamiltonian = build_hamiltonian(so)
    qubit_hamiltonian = map_fermion(hamiltonian, mapping, so.n_orbitals)
    return AssembledSystem(molecule=molecule, basis_name=basis,
                           integrals=integrals, scf=scf, h_mo=h_mo,
                           eri_mo=eri_mo, active_space=spec,
                           spin_orbitals=so, hamiltonian=hamiltonian,
                           mapping=mapping,
                           qubit_hamiltonian=qubit_hamiltonian)


def diatomic_geometry(symbols: Tuple[str, str], bond_length: float,
                      charge: int = 0, name: Optional[str] = None) -> Molecule:
    """Two atoms on the z axis separated by bond_length (Bohr)."""
    a, b = symbols
    return from_atom_list([(a, (0.0, 0.0, 0.0)), (b, (0.0, 0.0, bond_length))],
                          charge=charge, name=name)
