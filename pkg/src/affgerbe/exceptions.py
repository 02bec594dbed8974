"""Exception types raised across the package."""


class AffGerbeError(Exception):
    """Base class for every domain error in this package."""


class SingularLinearPart(AffGerbeError, ValueError):
    pass


class NotBlockTriangular(AffGerbeError, ValueError):
    """The linear part has nonzero entries in the base-by-fiber block."""

    def __init__(self, positions):
        self.positions = list(positions)
        super().__init__(f"forbidden nonzero entries at {self.positions}")


class InvalidRepresentation(AffGerbeError, ValueError):
    pass


class InvalidModule(AffGerbeError, ValueError):
    pass


class NotIntertwining(AffGerbeError, ValueError):
    def __init__(self, generator: int):
        self.generator = generator
        super().__init__(f"gauge pair does not intertwine the action at generator {generator}")


class UnsupportedHolonomy(AffGerbeError, ValueError):
    pass


class InvalidFibration(AffGerbeError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("fibration data failed validation: " + "; ".join(
            str(i) for i in report.issues))


class NotACocycle(AffGerbeError, ValueError):
    def __init__(self, message: str, rung: int | None = None):
        self.rung = rung
        prefix = f"rung {rung}: " if rung is not None else ""
        super().__init__(prefix + message)


class NotTranslational(AffGerbeError, ValueError):
    def __init__(self, simplices, rung: int | None = None):
        self.simplices = list(simplices)
        self.rung = rung
        prefix = f"rung {rung}: " if rung is not None else ""
        super().__init__(prefix + f"defect has nonidentity linear part on {self.simplices}")


class UnknownExample(AffGerbeError, KeyError):
    def __init__(self, name: str, available):
        self.name = name
        self.available = sorted(available)
        super().__init__(f"unknown example {name!r}; available: {', '.join(self.available)}")

    def __str__(self):
        return self.args[0]
