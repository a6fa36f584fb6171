"""Waring-type problems on Cantor sets: exact bounds, certified power-sum
decompositions, brute-force coverage, the complex dust and the p-adic case."""
from .cantor import CantorParams, SymbolWord, TERNARY
from .powersum import PowerSumProblem, decompose
from .dust import ComplexRational, decompose_complex
from .padic import PadicCantorParams, PadicInt, decompose_linear, decompose_power

__version__ = "0.1.0"

__all__ = [
    "CantorParams", "SymbolWord", "TERNARY", "PowerSumProblem", "decompose",
    "ComplexRational", "decompose_complex", "PadicCantorParams", "PadicInt",
    "decompose_linear", "decompose_power",
]
