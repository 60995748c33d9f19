"""
The `obeq.ui` package contains the diagnostic plots.
Plots are views (`obeq.ui.view.AbstractView`) that render numeric series into SVG text,
so they need no graphics libraries and can be compared in tests.
"""
