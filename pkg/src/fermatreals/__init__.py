"""Reals extended with nilpotent infinitesimals of rational order.

The public surface re-exports the canonical representation and ring
operations (:mod:`.core`), the order/nilpotency machinery (:mod:`.order`),
remainder-free calculus (:mod:`.calculus`), the expression front-end
(:mod:`.expr`), and curve plotting (:mod:`.plot`).  The ``fermat`` CLI
lives in :mod:`.cli`.
"""

from .core import (
    FermatReal,
    ONE,
    Term,
    ZERO,
    add,
    as_fermat,
    canonicalize,
    dt,
    eq,
    eq_up_to,
    format_real,
    from_real,
    invert,
    iota,
    leading_sign,
    mul,
    neg,
    pow_nat,
    standard_part,
    sub,
)
from .order import (
    OrderValue,
    Verdict,
    absolute,
    cancellation_order,
    compare,
    ideal_of_product,
    in_ideal,
    nilpotency_index,
    order,
    product_power_order,
    product_power_zero,
)
from .calculus import (
    CATALOG,
    ElementaryFn,
    ParamPoly,
    derive,
    eval_param_poly,
    ext_apply,
    log,
    pow_const,
    power,
    taylor_multi,
)
from .expr import (
    Expr,
    as_function,
    evaluate,
    format_fermat,
    free_variables,
    parse,
)
from .plot import GraphSample, graph_samples, render_csv, render_svg
from . import errors

__version__ = "0.1.0"

__all__ = [
    "FermatReal",
    "Term",
    "ZERO",
    "ONE",
    "add",
    "as_fermat",
    "canonicalize",
    "dt",
    "eq",
    "eq_up_to",
    "format_real",
    "from_real",
    "invert",
    "iota",
    "leading_sign",
    "mul",
    "neg",
    "pow_nat",
    "standard_part",
    "sub",
    "OrderValue",
    "Verdict",
    "absolute",
    "cancellation_order",
    "compare",
    "ideal_of_product",
    "in_ideal",
    "nilpotency_index",
    "order",
    "product_power_order",
    "product_power_zero",
    "CATALOG",
    "ElementaryFn",
    "ParamPoly",
    "derive",
    "eval_param_poly",
    "ext_apply",
    "log",
    "pow_const",
    "power",
    "taylor_multi",
    "Expr",
    "as_function",
    "evaluate",
    "format_fermat",
    "free_variables",
    "parse",
    "GraphSample",
    "graph_samples",
    "render_csv",
    "render_svg",
    "errors",
    "__version__",
]
