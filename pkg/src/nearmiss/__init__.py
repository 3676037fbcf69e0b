"""Near-miss analysis and design of framed lotteries over q-ary Hamming space."""

from .bounds import (
    m_bound,
    ratio_bounds,
    seller_value_upper_bound,
    single_winner_index,
    sphere_covering_bound,
)
from .constructions import (
    HammingCodeParams,
    extend_length,
    fold_alphabet,
    hamming_code,
    lift_code,
    radius1_length3_code,
    split_symbols,
)
from .field import FieldTable, gf
from .index import (
    DistanceProfile,
    NearMissReport,
    covering_radius,
    distance_profile,
    is_perfect_radius1,
    near_miss_index,
    seller_value,
)
from .search import (
    SearchCertificate,
    greedy_frame_path,
    min_distance_sum_curve,
    minimal_covering_code,
    optimal_frame,
)
from .seller import SellerDesign, design_optimal, design_schedule, minimal_length_check
from .space import (
    BudgetExceeded,
    LimitError,
    LotteryFrame,
    SpaceTooLarge,
    decode,
    encode,
    hamming_distance,
    neighbors,
)

__version__ = "0.1.0"
