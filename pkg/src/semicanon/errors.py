"""Exception hierarchy shared by every module of the package."""


class SemicanonError(ValueError):
    """Base class; the CLI maps it to exit code 2 unless stated otherwise."""

    code = "error"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class NonSquare(SemicanonError):
    code = "NonSquare"


class VertexMismatch(SemicanonError):
    code = "VertexMismatch"


class InvalidQuiver(SemicanonError):
    code = "InvalidQuiver"


class SingularBlock(SemicanonError):
    code = "SingularBlock"


class InvalidParams(SemicanonError):
    code = "InvalidParams"


class UnknownPoint(SemicanonError):
    code = "UnknownPoint"


class DimensionMismatch(SemicanonError):
    code = "DimensionMismatch"


class NotRegular(SemicanonError):
    code = "NotRegular"


class NonSquareHom(SemicanonError):
    code = "NonSquareHom"


class NonSquarePencil(SemicanonError):
    code = "NonSquarePencil"


class DegenerateSamples(SemicanonError):
    code = "DegenerateSamples"


class ZeroMass(SemicanonError):
    code = "ZeroMass"


class WeightNotClosed(SemicanonError):
    code = "WeightNotClosed"


class RelationFailure(SemicanonError):
    """A fitted relation left a nonzero residual; carries the witness sample."""

    code = "RelationFailure"

    def __init__(self, message, witness=None, details=None):
        super().__init__(message)
        self.witness = witness
        self.details = details or {}

    def to_json(self):
        out = super().to_json()
        out.update(self.details)
        return out
