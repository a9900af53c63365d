"""This file contains the discrepancy module exports."""
