"""Exception hierarchy for the workbench.

Every error raised on purpose derives from WorkbenchError so callers (and the
CLI) can separate contract/input problems from genuine bugs.
"""


class WorkbenchError(Exception):
    """Base class for all deliberate errors."""


class IncompatibleOperands(WorkbenchError):
    """Operands disagree on field or variable count."""


class IndexOutOfRange(WorkbenchError):
    """Variable index or point length does not match the variable count."""


class DegreeTooSmall(WorkbenchError):
    """Requested homogenization degree is below the polynomial's degree."""


class NotHomogeneous(WorkbenchError):
    """A homogeneous polynomial was required."""


class ParseError(WorkbenchError):
    """Malformed polynomial text or fixture document."""


class NotLinear(WorkbenchError):
    """Identity specification is not linear-homogeneous in the unknowns."""


class InvariantViolation(WorkbenchError):
    """A declared fixture invariant failed validation.

    Carries which invariant failed and a witness (sample point, generator, ...).
    """

    def __init__(self, which: str, witness=None):
        super().__init__(f"{which}" + (f" (witness: {witness})" if witness is not None else ""))
        self.which = which
        self.witness = witness


class NotZeroDimensional(WorkbenchError):
    """Jacobian system is not finite; quotient dimension did not stabilize."""


class UnsupportedDoubleCurve(WorkbenchError):
    """Operation only defined for surfaces with empty double curve."""


class StrategyUnavailable(WorkbenchError):
    """No usable adjointness strategy: double curve present but neither
    generators nor samples supplied (or the requested strategy lacks data)."""


class NoCompletion(WorkbenchError):
    """The given adjoint polynomial admits no Picard completion."""


class NonUniqueCompletion(WorkbenchError):
    """The completion fiber is positive-dimensional (genericity violation)."""


class NotASolution(WorkbenchError):
    """Tuple does not satisfy Picard's relation exactly."""


class DegreeOverflow(WorkbenchError):
    """A homogeneous-form component exceeds its mandated degree; indicates an
    upstream bug, never a legal state."""


class ContractViolation(WorkbenchError):
    """Caller violated a documented precondition."""


class CharacteristicDividesDegree(WorkbenchError):
    """The operation divides by the surface degree, undefined when p | d."""


class ReductionError(WorkbenchError):
    """A rational fixture cannot be reduced mod p (denominator divisible by p)."""


class ClosednessViolation(WorkbenchError):
    """A regular 1-form on an ordinary characteristic-0 fixture had a nonzero
    integrability defect.  Mathematically impossible; signals a broken fixture
    declaration or an implementation bug."""
