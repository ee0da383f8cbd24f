"""Pattern-matching of binary-input channels into named shapes."""

from .models import ChannelClass, ChannelKind, ClassicalChannel


def classify_channel(ch: ClassicalChannel) -> ChannelClass:
    """Classify a channel by the columns of its canonical form.

    A column is balanced when both inputs give it the same probability,
    exclusive when only one input reaches it, and mixed otherwise. The
    parameter of every parametrized class is the overlap
    sum(min(p(o|0), p(o|1))): the erasure probability, the damping
    probability, or twice the flip probability of a symmetric channel.
    """
    canonical = ch.canonical()
    columns = [(p0, p1) for _, p0, p1 in canonical.columns()]
    exclusive = [(p0, p1) for p0, p1 in columns if p0 == 0 or p1 == 0]
    mixed = [(p0, p1) for p0, p1 in columns if p0 != p1 and p0 != 0 and p1 != 0]
    overlap = sum(min(p0, p1) for p0, p1 in columns)

    if not exclusive and not mixed:
        return ChannelClass(ChannelKind.ZERO_CAPACITY)
    if not mixed:
        return ChannelClass(ChannelKind.ERASURE, overlap)
    if not exclusive:
        ratios = {max(p0, p1) / min(p0, p1) for p0, p1 in mixed}
        if len(ratios) == 1:
            return ChannelClass(ChannelKind.DEPOLARIZING, overlap)
        return ChannelClass(ChannelKind.OTHER)
    return ChannelClass(ChannelKind.AMPLITUDE_DAMPING, overlap)
