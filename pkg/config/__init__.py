"""Configuration module for hypersect"""
