"""Pydantic models for data, actions, fans and reports"""
