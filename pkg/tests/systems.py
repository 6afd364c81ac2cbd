"""Named weight systems used across the suites."""
from toricvortex.toric_geometry import WeightSystem


def projective(n: int) -> WeightSystem:
    return WeightSystem.from_weights([(1,)] * (n + 1))


CP1 = projective(1)
CP2 = projective(2)
CP1xCP1 = WeightSystem.from_weights([(1, 0), (1, 0), (0, 1), (0, 1)])
# rank-two action on C^5 whose monotone quotient is a threefold with six fixed points
THREEFOLD = WeightSystem.from_weights([(1, 0), (1, 1), (0, 1), (0, 1), (0, 1)])
THREEFOLD_TAU = (2, 4)
