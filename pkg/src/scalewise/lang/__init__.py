"""The ``.msr`` measurement language: parser, sort checker and evaluator."""

from .checker import CheckResult, check_program, infer_sort, load_registry
from .diagnostics import Diagnostic, DiagnosticError, format_diagnostics
from .evaluator import EvalResult, StatementResult, eval_expr, evaluate_program
from .nodes import Program, Span
from .parser import parse, parse_expression, parse_program
from .printer import print_expr, print_program

__all__ = [
    "CheckResult", "Diagnostic", "DiagnosticError", "EvalResult", "Program", "Span",
    "StatementResult", "check_program", "eval_expr", "evaluate_program",
    "format_diagnostics", "infer_sort", "load_registry", "parse", "parse_expression", "parse_program",
    "print_expr", "print_program",
]
