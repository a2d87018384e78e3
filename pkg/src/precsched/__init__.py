"""Branch and bound and list scheduling for P|prec|Cmax."""

from precsched.bnb import Bound, SearchStats, Status, brute_force_opt, solve
from precsched.bounds import fernandez_bound, fujita_bound, machines_lower
from precsched.graph import TaskGraph, build_graph, critical_path_length, normalize
from precsched.listsched import PriorityRule, list_schedule
from precsched.schedule import PartialSolution, decode

__all__ = [
    "Bound",
    "PartialSolution",
    "PriorityRule",
    "SearchStats",
    "Status",
    "TaskGraph",
    "brute_force_opt",
    "build_graph",
    "critical_path_length",
    "decode",
    "fernandez_bound",
    "fujita_bound",
    "list_schedule",
    "machines_lower",
    "normalize",
    "solve",
]
