"""Exponential equations, infinite power towers and the arithmetic nature of their solutions."""

from .rational import (
    QQNature,
    QQTag,
    curve_rational_point,
    format_rational,
    integer_nth_root,
    is_curve_pair,
    is_tower_fix,
    parse_rational,
    qq_nature,
    rational_nth_root,
    tower_fix_rational_solutions,
)
from .real import (
    DEFAULT_PRECISION,
    BigReal,
    Bracket,
    BracketError,
    CurveSolution,
    DomainError,
    Precision,
    RootFindingError,
    XxSolutions,
    constant,
    find_root_monotone,
    g,
    g_inverse,
    log_z_of_t,
    parse_real,
    rpow,
    solve_curve,
    solve_x_pow_x,
    x_of_t,
    y_of_t,
)
from .tower import (
    TowerMode,
    TowerValue,
    tower_h,
    tower_iterate_raw,
    tower_odd_even,
    two_step_fixed_points,
)

from .expr import (
    ExpRat,
    ExprError,
    NumberExpr,
    ParseError,
    Rat,
    RatPow,
    Surd,
    UnsupportedForm,
    exprat,
    make_surd,
    parse_expr,
    ratpow,
    squarefree_decompose,
    surd_power,
)
from .classify import (
    Nature,
    Verdict,
    classify_curve_at_t,
    classify_curve_pair,
    classify_qqq,
    classify_tower,
    classify_tower_inverse_power,
    classify_tower_odd_even,
    classify_tt_eq_qq,
    classify_xx_solutions,
    powers_never_rational,
    self_nature,
)
from .rules import RULES, Rule, describe

__version__ = "0.1.0"
