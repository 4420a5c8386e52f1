"""Physical constants in Gaussian-cgs units.

Energies are carried in Kelvin, fields in Oe and susceptibilities in
muB/Oe per dimer formula unit, so the only constant the thermal code
needs is the ratio muB/kB.
"""
from dataclasses import dataclass

# CODATA 2018
BOHR_MAGNETON_ERG_PER_G = 9.2740100783e-21
BOLTZMANN_ERG_PER_K = 1.380649e-16
AVOGADRO = 6.02214076e23


@dataclass(frozen=True)
class PhysicalConstants:
    c_mu: float = BOHR_MAGNETON_ERG_PER_G / BOLTZMANN_ERG_PER_K  # K/Oe


CONSTANTS = PhysicalConstants()
C_MU = CONSTANTS.c_mu

# 1 muB/Oe per dimer == N_A * muB emu/mol of dimers
EMU_PER_MOL_PER_MUB_OE = AVOGADRO * BOHR_MAGNETON_ERG_PER_G


def emu_mol_to_mub_oe(chi_emu_mol):
    return chi_emu_mol / EMU_PER_MOL_PER_MUB_OE


def mub_oe_to_emu_mol(chi_mub_oe):
    return chi_mub_oe * EMU_PER_MOL_PER_MUB_OE
