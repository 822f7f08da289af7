"""Error type shared by every module.

All domain failures raise :class:`DomainError` carrying a short machine-readable
``kind`` tag plus a human-readable detail string.  The CLI maps these onto exit
code 1 and a JSON error object; library users can branch on ``kind``.
"""


class DomainError(Exception):
    """A mathematically meaningful failure (bad input, impossible operation)."""

    def __init__(self, kind: str, detail: str = ""):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}" if detail else kind)
