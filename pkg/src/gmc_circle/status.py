"""Report status flags: proved identities vs oracle-backed vs conjecture checks."""

PROVED_IDENTITY = "PROVED-IDENTITY"
DERIVED_ORACLE = "DERIVED-ORACLE"
CONJECTURE = "CONJECTURE"

ALL_STATUSES = (PROVED_IDENTITY, DERIVED_ORACLE, CONJECTURE)
