"""Settings and error types"""
