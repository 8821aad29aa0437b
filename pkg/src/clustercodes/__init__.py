"""Binary multidimensional cluster-error-correcting codes.

Codes are built from one-dimensional burst-correcting and burst-locating
component codes, tied to the array by a set of colorings.
"""

from .codec import (
    CodeAssembly,
    assemble,
    bounds_report,
    decode,
    encode,
    extract_info,
    load_assembly,
    read_array,
    save_assembly,
    syndrome,
    write_array,
)
from .coloring import ColoringSet, certify, check_p1, check_p2, check_p3, solve_position
from .components import (
    ComponentCode,
    ParityCheck,
    build_bch,
    burst_corrector,
    burst_decode,
    locate_burst,
    make_locator,
    search_corrector,
    search_limited_weight,
    search_locator,
    search_optimum_burst_code,
)
from .errors import (
    BudgetExceeded,
    CertificationError,
    ClusterCodeError,
    FormatError,
    NoComponentCode,
    NoMatch,
    NonIntegral,
    NotFoundInRange,
    OutOfArray,
    RankDeficient,
    ShapeUnsupported,
    Undecodable,
)
from .field import BinPoly, ExtField, FieldElem
from .report import CheckReport
from .shapes import Cluster, ShapeSpec

__version__ = "0.1.0"
