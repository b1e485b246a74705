"""Exception types shared across the package."""


class InvalidGridError(ValueError):
    """Grid specification violates its invariants."""


class InvalidFieldError(ValueError):
    """Scalar field is malformed or inconsistent with the complex."""


class InvalidFiltrationError(ValueError):
    """Simplex order violates the face-before-coface requirement."""


class InvalidParameterError(ValueError):
    """Operation parameter outside its valid range."""


class InvalidGraphError(ValueError):
    """Hidden-graph specification is malformed or disconnected."""


class NoiseModelError(ValueError):
    """Noise parameters or field violate the generator's admissibility conditions."""


class SimplexNotFoundError(KeyError):
    """Simplex id does not exist in the complex or pairing."""


class GradientInvariantError(RuntimeError):
    """Internal gradient-field invariant broken; indicates an implementation bug."""
