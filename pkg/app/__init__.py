"""Generic nominal subtyping construction toolkit"""
