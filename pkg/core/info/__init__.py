from .functionals import (
    binary_entropy,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    joint_entropy,
    mutual_information,
    pushforward,
)
from .joint import JointTensor
from .pmf import MAX_ALPHABET, ConditionalPmf, DelaySet, DiscreteChannel, Pmf

__all__ = [
    "Pmf",
    "ConditionalPmf",
    "DiscreteChannel",
    "DelaySet",
    "JointTensor",
    "MAX_ALPHABET",
    "entropy",
    "binary_entropy",
    "joint_entropy",
    "conditional_entropy",
    "mutual_information",
    "conditional_mutual_information",
    "pushforward",
]
