"""
Exact polyhedral machinery behind the ``pa`` command line tool
"""
