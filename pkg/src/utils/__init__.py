"""Report rendering"""
