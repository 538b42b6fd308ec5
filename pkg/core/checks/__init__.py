"""Property checks run by the verify workflow"""
