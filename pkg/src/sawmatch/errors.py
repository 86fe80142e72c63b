"""Exception types shared across the package."""


class SawmatchError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SawmatchError):
    """Input document is not well-formed or is not the expected kind of XML."""


class EmptyServiceError(ParseError):
    """A service description contains no interface with at least one operation."""


class EmptyOntologyError(ParseError):
    """An ontology document declares no classes at all."""


class InvalidQueryError(SawmatchError):
    """A query requests neither inputs nor outputs."""


class MissingJudgmentsError(SawmatchError):
    """No relevance judgments exist for a query that is being evaluated."""
