"""Joint distributions and Shannon quantities; theorem checks live in `core.infotheory.verify`."""

from .distribution import JointDistribution, as_fractions, joint_from_box, random_joints
from .measures import entropy, guessed_information, joint_entropy, mutual_information, tripartite_information

__all__ = [
    "JointDistribution",
    "as_fractions",
    "entropy",
    "guessed_information",
    "joint_entropy",
    "joint_from_box",
    "mutual_information",
    "random_joints",
    "tripartite_information",
]
