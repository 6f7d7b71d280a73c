"""Relation construction, containment oracle and command services"""
