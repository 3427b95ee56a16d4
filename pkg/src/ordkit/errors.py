"""Exception hierarchy shared by every ordkit module."""


class OrdkitError(Exception):
    """Base class for all ordkit errors."""


class CycleError(OrdkitError):
    """The closure of the given pairs is not antisymmetric."""

    def __init__(self, x, y):
        super().__init__(f"order closure relates {x!r} <= {y!r} <= {x!r}")
        self.witness = (x, y)


class DuplicateElement(OrdkitError):
    pass


class UnknownElement(OrdkitError):
    pass


class TypeMismatch(OrdkitError):
    pass


class NotMonotone(OrdkitError):
    def __init__(self, x, y):
        super().__init__(f"{x!r} <= {y!r} but their images are not ordered")
        self.witness = (x, y)


class SizeLimit(OrdkitError):
    pass


class NotTotal(OrdkitError):
    def __init__(self, x):
        super().__init__(f"relation has no pair with first component {x!r}")
        self.witness = x


class NotOrderPreserving(OrdkitError):
    def __init__(self, first, second):
        super().__init__(
            f"pairs {first!r} and {second!r} have ordered sources "
            "but unordered targets"
        )
        self.witness = (first, second)


class NotACongruence(OrdkitError):
    def __init__(self, axiom, witness):
        super().__init__(f"relation fails {axiom}: {witness!r}")
        self.axiom = axiom
        self.witness = witness


class NotAPullback(OrdkitError):
    pass


class HypothesisFailure(OrdkitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALattice(OrdkitError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
