"""Exception hierarchy.

Exit-code mapping used by the CLI: input problems are ``InputError``
(code 2), failed mathematical checks on valid input are
``VerificationFailure`` (code 1), and ``EngineDefect`` (code 3) is
reserved for theorem-backed checks that can only fail if the engine
itself is wrong.
"""


class PersplitError(Exception):
    pass


class InputError(PersplitError):
    pass


class FieldMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer


class VerificationFailure(PersplitError):
    pass


class ContainmentViolation(VerificationFailure):
    """A Ψ-schedule step found an image outside the asserted filtration
    level; the input does not arise from a splittable situation."""

    def __init__(self, i, d, t, witness):
        super().__init__(
            f"containment violated at slot (i={i}, d={d}), step t={t}; witness {witness}"
        )
        self.i, self.d, self.t, self.witness = i, d, t, witness


class AssemblyFailure(VerificationFailure):
    def __init__(self, check, detail=""):
        super().__init__(f"assembly check failed: {check}" + (f" ({detail})" if detail else ""))
        self.check = check


class HypothesisFailure(VerificationFailure):
    def __init__(self, hypothesis):
        super().__init__(f"hypothesis not satisfied: {hypothesis}")
        self.hypothesis = hypothesis


class PreconditionFailure(VerificationFailure):
    def __init__(self, what):
        super().__init__(f"precondition not satisfied: {what}")
        self.what = what


class CompatibilityFailure(VerificationFailure):
    def __init__(self, flag):
        super().__init__(f"pairing compatibility flag violated: {flag}")
        self.flag = flag


class GroupClosureBoundExceeded(VerificationFailure):
    def __init__(self, bound):
        super().__init__(f"group closure exceeded {bound} elements")
        self.bound = bound


class EngineDefect(PersplitError):
    """A theorem-backed verification failed although its hypotheses held."""
