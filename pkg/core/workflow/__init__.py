"""Workflow module for hypersect"""
