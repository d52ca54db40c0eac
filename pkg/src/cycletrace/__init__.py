"""Trace maps and flatness certificates for branched coverings."""
