"""Second-quantization layer: normal ordering, Hamiltonian assembly (checked
against dense ladder matrices built from scratch), and active windows."""

import numpy as np
import pytest

from qelectra.fermion import (ActiveSpaceSpec, FermionOperator,
                              apply_active_space, build_hamiltonian,
                              hamiltonian_expectation_hf,
                              mo_spatial_integrals, mo_transform,
                              number_operator, spatial_active_space,
                              sz_operator, to_spin_orbitals)
from qelectra.integrals import compute_integrals
from qelectra.molecule import from_atom_list
from qelectra.oracle import exact_ground_energy, pauli_to_matrix
from qelectra.pauli import MappingKind, map_fermion
from qelectra.pipeline import shipped_geometry
from qelectra.scf import run_rhf


def dense_annihilator(mode, n_modes):
    """Occupation-number-basis matrix of a_mode, bit i of the index = n_i."""
    dim = 2 ** n_modes
    a = np.zeros((dim, dim))
    for b in range(dim):
        if b >> mode & 1:
            sign = (-1) ** bin(b & ((1 << mode) - 1)).count("1")
            a[b ^ (1 << mode), b] = sign
    return a


def dense_operator(op: FermionOperator, n_modes):
    dim = 2 ** n_modes
    ladders = [dense_annihilator(m, n_modes) for m in range(n_modes)]
    total = np.zeros((dim, dim), dtype=complex)
    for key, coeff in op.terms.items():
        m = np.eye(dim)
        for mode, dagger in key:
            m = m @ (ladders[mode].T if dagger else ladders[mode])
        total += coeff * m
    return total


def h2_spin_orbitals():
    mol = from_atom_list([("H", (0, 0, 0)), ("H", (0, 0, 1.388861))])
    ints = compute_integrals(mol, "sto-3g")
    scf = run_rhf(ints, 2)
    return scf, mo_transform(ints, scf.mo_coefficients, 2)


def test_normal_ordering_car():
    # a_0 a_0^dagger = 1 - a_0^dagger a_0
    op = FermionOperator({((0, 0), (0, 1)): 1.0})
    no = op.normal_ordered()
    assert no.constant() == pytest.approx(1.0)
    assert no.terms[((0, 1), (0, 0))] == pytest.approx(-1.0)


def test_normal_ordering_kills_repeated_ladders():
    op = FermionOperator({((1, 1), (1, 1)): 2.0, ((0, 0), (0, 0)): 3.0})
    assert len(op.normal_ordered()) == 0


def test_normal_ordering_matches_dense_matrices():
    rng = np.random.default_rng(11)
    n_modes = 3
    op = FermionOperator()
    for _ in range(12):
        length = rng.integers(1, 5)
        key = tuple((int(rng.integers(0, n_modes)), int(rng.integers(0, 2)))
                    for _ in range(length))
        op.add_term(key, complex(rng.normal(), rng.normal()))
    no = op.normal_ordered()
    assert np.allclose(dense_operator(op, n_modes),
                       dense_operator(no, n_modes), atol=1e-12)


def test_h2_term_count():
    _, so = h2_spin_orbitals()
    no = build_hamiltonian(so).normal_ordered()
    body_terms = [k for k in no.terms if k]
    assert len(body_terms) == 14
    assert no.constant() == pytest.approx(so.core_energy)


def test_hamiltonian_against_dense_ladder_construction():
    scf, so = h2_spin_orbitals()
    ham = build_hamiltonian(so)
    dense = dense_operator(ham, so.n_orbitals)
    # independently: same matrix out of the mapped Pauli form
    mapped = pauli_to_matrix(map_fermion(ham, MappingKind.JORDAN_WIGNER,
                                         so.n_orbitals))
    assert np.max(np.abs(dense - mapped)) < 1e-12
    # the reference determinant |0011> must give the SCF energy
    hf_index = 0b0011
    assert dense[hf_index, hf_index].real == pytest.approx(scf.e_total,
                                                           abs=1e-10)


def test_spin_orbital_interleaving():
    # spatial orbital p lands on spin orbitals 2p (alpha) and 2p+1 (beta),
    # and the one-body part never mixes spins
    _, so = h2_spin_orbitals()
    h = so.one_body
    assert h[0, 1] == pytest.approx(0.0, abs=1e-14)
    assert h[0, 0] == pytest.approx(h[1, 1], abs=1e-14)
    assert h[0, 0] == pytest.approx(-1.2563672433063395, abs=1e-10)


def test_two_body_spin_selection():
    _, so = h2_spin_orbitals()
    g = so.two_body
    # <pq|rs> vanishes unless spin(p)=spin(r) and spin(q)=spin(s)
    assert g[0, 0, 1, 0] == pytest.approx(0.0, abs=1e-14)
    assert g[0, 1, 0, 1] != pytest.approx(0.0, abs=1e-6)


def test_hf_expectation_shortcut():
    _, so = h2_spin_orbitals()
    scf, _ = h2_spin_orbitals()
    assert hamiltonian_expectation_hf(so) == pytest.approx(scf.e_total,
                                                           abs=1e-10)


def test_active_space_routes_agree():
    # folding in the spatial basis and in the spin-orbital basis must
    # produce identical reduced problems
    for key, spec in [("lih", ActiveSpaceSpec(2, 5)),
                      ("h2o", ActiveSpaceSpec(8, 6)),
                      ("h2o", ActiveSpaceSpec(4, 3))]:
        mol = shipped_geometry(key)
        ints = compute_integrals(mol, "sto-3g")
        scf = run_rhf(ints, mol.n_electrons)
        h_mo, eri_mo = mo_spatial_integrals(ints, scf.mo_coefficients)

        h_act, eri_act, core, n_act = spatial_active_space(
            h_mo, eri_mo, ints.nuclear_repulsion, mol.n_electrons, spec)
        so_a = to_spin_orbitals(h_act, eri_act, core, n_act)

        so_full = mo_transform(ints, scf.mo_coefficients, mol.n_electrons)
        so_b = apply_active_space(so_full, spec)

        assert so_a.core_energy == pytest.approx(so_b.core_energy, abs=1e-10)
        assert np.allclose(so_a.one_body, so_b.one_body, atol=1e-10)
        assert np.allclose(so_a.two_body, so_b.two_body, atol=1e-10)


def test_active_space_preserves_total_hf_energy():
    mol = shipped_geometry("h2o")
    ints = compute_integrals(mol, "sto-3g")
    scf = run_rhf(ints, 10)
    so_full = mo_transform(ints, scf.mo_coefficients, 10)
    so_act = apply_active_space(so_full, ActiveSpaceSpec(8, 6))
    assert hamiltonian_expectation_hf(so_act) == pytest.approx(
        scf.e_total, abs=1e-9)


def test_active_space_validation():
    _, so = h2_spin_orbitals()
    with pytest.raises(ValueError):
        apply_active_space(so, ActiveSpaceSpec(1, 2))   # odd freeze
    with pytest.raises(ValueError):
        apply_active_space(so, ActiveSpaceSpec(2, 9))   # window too wide
    with pytest.raises(ValueError):
        apply_active_space(so, ActiveSpaceSpec(6, 1))   # too many electrons


def test_number_and_sz_operators():
    n_modes = 4
    n_dense = dense_operator(number_operator(n_modes), n_modes)
    sz_dense = dense_operator(sz_operator(n_modes), n_modes)
    for b in range(2 ** n_modes):
        occ = [b >> k & 1 for k in range(n_modes)]
        assert n_dense[b, b].real == pytest.approx(sum(occ))
        expected_sz = 0.5 * (occ[0] + occ[2] - occ[1] - occ[3])
        assert sz_dense[b, b].real == pytest.approx(expected_sz)
    assert np.count_nonzero(n_dense - np.diag(np.diag(n_dense))) == 0


def test_full_vs_active_ground_state_bound():
    # freezing can only raise the ground energy
    mol = shipped_geometry("lih")
    ints = compute_integrals(mol, "sto-3g")
    scf = run_rhf(ints, 4)
    so_full = mo_transform(ints, scf.mo_coefficients, 4)
    e_full = exact_ground_energy(
        map_fermion(build_hamiltonian(so_full), MappingKind.PARITY,
                    so_full.n_orbitals))
    so_act = apply_active_space(so_full, ActiveSpaceSpec(2, 5))
    e_act = exact_ground_energy(
        map_fermion(build_hamiltonian(so_act), MappingKind.PARITY,
                    so_act.n_orbitals))
    assert e_act >= e_full - 1e-9
    assert e_act == pytest.approx(-7.882176004920536, abs=1e-8)
    assert e_full == pytest.approx(-7.882403424257525, abs=1e-7)
