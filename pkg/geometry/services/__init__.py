"""
Service layer for the theorem checker: orchestration of parsing, translation and decision.
"""
