"""Exception types shared across the reasoner."""


class PalcError(Exception):
    """Base class for reasoner errors."""


class ValidationError(PalcError):
    pass


class UndeclaredSymbol(ValidationError):
    def __init__(self, name):
        super().__init__(f"undeclared symbol: {name}")
        self.name = name


class DuplicateDefinition(ValidationError):
    def __init__(self, symbol):
        super().__init__(f"symbol defined more than once: {symbol}")
        self.symbol = symbol


class TerminologicalCycle(ValidationError):
    def __init__(self, path):
        super().__init__("terminological cycle: " + " -> ".join(path))
        self.path = list(path)


class ReservedSymbol(ValidationError):
    def __init__(self, name):
        super().__init__(f"reserved name used as a symbol: {name}")
        self.name = name


class UnsatisfiableAntecedent(ValidationError):
    def __init__(self, conditioning):
        super().__init__(f"antecedent is unsatisfiable: {conditioning}")
        self.conditioning = conditioning


class EmptyIntersection(PalcError):
    def __init__(self, a, b):
        super().__init__(f"empty intersection of {a} and {b}")
        self.a, self.b = a, b


class SignatureTooLarge(PalcError):
    def __init__(self, size, cap):
        super().__init__(f"signature of {size} symbols exceeds the cap of {cap}")
        self.size, self.cap = size, cap


class NonPropositionalQuery(PalcError):
    """A concept contains a role restriction that no defined symbol names."""

    def __init__(self, concept):
        super().__init__(
            f"role restriction {concept!r} is not named by any definition; "
            "introduce it with `name = ...` and refer to the name"
        )
        self.concept = concept


class CardinalityMismatch(PalcError):
    def __init__(self, total, domain_size):
        super().__init__(f"cardinalities sum to {total}, domain has {domain_size}")
        self.total, self.domain_size = total, domain_size


class InconsistentKB(PalcError):
    def __init__(self, report):
        super().__init__(f"knowledge base is inconsistent: {report}")
        self.report = report


class VacuousAntecedent(PalcError):
    def __init__(self, concept):
        super().__init__(f"antecedent has probability 0 in every model: {concept!r}")
        self.concept = concept
