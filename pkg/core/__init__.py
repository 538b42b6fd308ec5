"""Core module for hypersect"""
