"""Decision core: errors, the decide procedure and the ledger-backed engine."""
