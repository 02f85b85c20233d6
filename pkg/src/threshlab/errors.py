"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: input errors exit 1, capacity errors
exit 2, acceptance failures exit 3.
"""


class ThreshlabError(Exception):
    code = "internal"


class InputError(ThreshlabError):
    """Malformed or contradictory caller input."""

    code = "input"


class InfeasibleError(InputError):
    """Pattern cannot occur in the requested ambient graph (n < v(H))."""

    code = "input"


class CapacityError(ThreshlabError):
    """Request exceeds a hard capacity bound (vertex cap, edge cap, term cap)."""

    code = "capacity"
