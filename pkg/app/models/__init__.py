"""Type model, class tables and document schemas"""
