"""Export module for hypersect"""
