# Solver modules 