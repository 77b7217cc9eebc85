"""Fair allocation of players to teams under two-sided preferences."""

from .justified import alg_cut_and_choose_identical, alg_jef_two_teams_search, lumpy_tie
from .model import (
    Allocation,
    CapacityError,
    DomainError,
    Instance,
    Preference,
    ValidationError,
    load_allocation,
    load_instance,
    prefers,
    save_allocation,
    save_instance,
    team_utility,
)
from .pareto import alg_adjusted_winner_two_teams, alg_dp_const_teams, alg_three_teams_identical, mnw_bruteforce
from .stability import alg_double_round_robin, alg_swap_stable_balanced
from .verifiers import (
    DominanceScope,
    Property,
    PropertyReport,
    exists_ef1_jef_bruteforce,
    find_beneficial_deviation,
    find_beneficial_swap,
    find_justified_envy,
    is_balanced,
    is_ef1,
    is_ef11,
    is_po_bruteforce,
    pareto_dominates,
)

__version__ = "0.1.0"
