"""Certified reduction engine."""

from .certificate import check_certificate, verify_certificate
from .reduce import DEFAULT_BUDGET, STRATEGIES, Partial, Reduction, reduce
from .rules import Combinator, Rule, RuleError, RuleInstance, applicable_rules, apply_rule, check_witness

__all__ = [
    "Combinator", "DEFAULT_BUDGET", "Partial", "Reduction", "Rule", "RuleError", "RuleInstance",
    "STRATEGIES", "applicable_rules", "apply_rule", "check_certificate", "check_witness",
    "reduce", "verify_certificate",
]
