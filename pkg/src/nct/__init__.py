"""Nearest colored node queries on compactly stored ordinal trees."""

from .bits import BitVec
from .bp import BPTree
from .colors import ColorSeq, entropy_h0, entropy_hk
from .decomp import Decomposition, MacroTree, Piece, decompose, macro_tree
from .errors import (
    AlignmentViolation,
    ColorAbsent,
    DegenerateTree,
    InputError,
    MalformedTree,
    NCTError,
    NoAlphaDescendant,
    NoOwningPiece,
    NoSuchOccurrence,
    OutOfBounds,
    ParameterInfeasible,
)
from .large import AlphaTree, LargeSigmaIndex, WeightedMacro, build_large, query_large
from .report import SpaceReport, space_report
from .rmq import SampledRMQ, SparseTable
from .small import SmallSigmaIndex, build_small, query_small
from .treefile import TreeFile, generate

__version__ = "0.1.0"
