"""Exception types. Configuration problems derive from ConfigError so the CLI can map them to exit code 2."""


class HetCacheError(Exception):
    pass


class ConfigError(HetCacheError, ValueError):
    pass


class InvalidConfig(ConfigError):
    pass


class NonIntegerRedundancy(ConfigError):
    """K*gamma is not an integer, so no placement exists for the scheme."""


class InvalidStreamSplit(ConfigError):
    pass


class RegimeMismatch(ConfigError):
    """The configuration belongs to a different delivery regime than the one requested."""


class UnsupportedRegime(ConfigError):
    """No scheduler in this package reaches the closed-form delay for this configuration."""


class InsufficientGround(ConfigError):
    pass


class InvalidDemand(ConfigError):
    pass


class InstanceTooLarge(ConfigError):
    pass


class InfeasibleProfile(ConfigError):
    pass


class DuplicatePhi(HetCacheError):
    """A copy index was handed out twice for the same (user, class). Always a scheduler bug."""


class ChannelError(HetCacheError):
    pass


class GenericityFailure(ChannelError):
    pass


class SingularSubmatrix(ChannelError):
    pass


class DecodeFailure(HetCacheError):
    cause = "decode failure"


class Uncancelable(DecodeFailure):
    cause = "uncancelable interference"


class XorUnresolvable(DecodeFailure):
    cause = "xor unresolvable"


class ZeroDesiredCoefficient(DecodeFailure):
    cause = "zero desired coefficient"


class NotAddressed(HetCacheError):
    """The receiver has no demanded content in this transmission. Not a failure."""
