"""acmac-bounds package.

No side-effect imports in package init.
All wiring is explicit via core/gateway/cli.py and core/kernel/*.
"""
__all__ = []
