"""Exception types raised across the package."""


class LambdaOrdersError(Exception):
    pass


class InvalidInput(LambdaOrdersError, ValueError):
    """Malformed table, presentation or JSON document."""


class IdentityAxiomViolated(InvalidInput):
    def __init__(self, s):
        self.s = s
        super().__init__(f"residue 1 does not fix point {s}")


class AssociativityViolated(InvalidInput):
    def __init__(self, a, b, s):
        self.a, self.b, self.s = a, b, s
        super().__init__(f"a(b s) != (ab) s for a={a}, b={b}, s={s}")


class LevelMismatch(LambdaOrdersError, ValueError):
    pass


class InconsistentPresentation(LambdaOrdersError):
    pass


class NotAUnit(LambdaOrdersError, ValueError):
    pass


class SubgroupInvalid(LambdaOrdersError, ValueError):
    pass


class NotEtale(LambdaOrdersError):
    pass


class NotContained(LambdaOrdersError, ValueError):
    pass


class RankTooLarge(LambdaOrdersError, ValueError):
    pass
