"""Finding and refuting solutions of ``a*f**x + b*g**y = c`` over prime fields."""
from .ff import FieldCtx, NotPrime, OutOfRange, ZeroInverse, make_ctx
from .numth import (NotADivisor, OrderInfo, ZeroElement, bsgs_dlog,
                    element_of_order, factor, mult_order)
from .solver import (EquationInstance, Mode, OpStats, SearchPlan, SolveOutcome,
                     Verdict, WindowTooLarge, count_solutions, make_plan,
                     oracle_solve, solve_typical, solve_worst_case)

__version__ = "0.1.0"
