"""Latin squares from bipermutive cellular automata and their diagonal transversals."""

from .ca import (
    BitConfig,
    PbcaMap,
    diagonal_is_permutation,
    diagonal_map,
    is_invertible,
    nbca_eval,
    pbca_eval,
)
from .errors import BcaError, ContractError, NotBipermutiveError, ResourceLimitError
from .rule import (
    Anf,
    BipermutiveRule,
    DegreeClass,
    TruthTable,
    WolframCode,
    anf,
    degree_class,
    eval_table,
    expand,
    extract_generator,
    is_bipermutive,
    parse_anf,
)
from .search import SearchReport, enumerate_invertible, filter_by_class, spot_check
from .square import (
    CoordSet,
    DecompositionStatus,
    LatinSquareGrid,
    TransversalDecomposition,
    are_orthogonal,
    build_square,
    coord_decode,
    coord_encode,
    diagonal_coords,
    find_disjoint_decomposition,
    is_latin,
    is_transversal,
    mate_from_decomposition,
    shifted_diagonal_is_transversal,
)

__version__ = "0.1.0"
