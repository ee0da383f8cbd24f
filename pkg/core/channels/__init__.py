"""Binary-input classical channels, their classification and erasure degradation."""

from .classify import classify_channel
from .models import (
    ChannelClass,
    ChannelKind,
    ClassicalChannel,
    channel_from_joint,
    erasure_channel,
    identity_channel,
)
from .postprocessing import erasure_overlap, erasure_to_amplitude_damping, is_postprocessing_of_erasure

__all__ = [
    "ChannelClass",
    "ChannelKind",
    "ClassicalChannel",
    "channel_from_joint",
    "classify_channel",
    "erasure_channel",
    "erasure_overlap",
    "erasure_to_amplitude_damping",
    "identity_channel",
    "is_postprocessing_of_erasure",
]
