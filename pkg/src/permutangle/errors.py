"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Matrix or subsystem dimensions are unsupported or inconsistent."""


class HermiticityError(ValueError):
    """Input violates a Hermiticity contract beyond tolerance."""


class DomainError(ValueError):
    """Parameter outside the domain of a family, curve, or measure."""


class DegenerateStateError(ValueError):
    """A construction cancelled to (numerically) zero norm."""
