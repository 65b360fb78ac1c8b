from ddsemantic.features.pic_information.bruteforce import (
    capacity_bruteforce,
    mutual_information_bruteforce,
    optimal_input_grid_search,
    z_equivalence_gap,
)
from ddsemantic.features.pic_information.schemas import ChannelPoint, OptimalInput
from ddsemantic.features.pic_information.service import (
    binary_entropy,
    binomial_output_pmf,
    capacity_at,
    capacity_closed_form,
    channel_point,
    crossover_probability,
    mutual_information_derivative,
    mutual_information_z,
    optimal_input,
)

__all__ = [
    "ChannelPoint",
    "OptimalInput",
    "binary_entropy",
    "binomial_output_pmf",
    "capacity_at",
    "capacity_bruteforce",
    "capacity_closed_form",
    "channel_point",
    "crossover_probability",
    "mutual_information_bruteforce",
    "mutual_information_derivative",
    "mutual_information_z",
    "optimal_input",
    "optimal_input_grid_search",
    "z_equivalence_gap",
]
