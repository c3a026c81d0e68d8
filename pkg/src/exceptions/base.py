class BiostabError(Exception):
    """Base class for all errors raised by the package"""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.detail = message


class BadInput(BiostabError):
    exit_code = 2


class SolverFailure(BiostabError):
    exit_code = 3


class ValidationError(BadInput):
    def __init__(self, errors: dict[str, list[str]]):
        self.errors = dict(errors)
        lines = [f"{field}: {message}" for field, messages in self.errors.items() for message in messages]
        super().__init__("; ".join(lines))
