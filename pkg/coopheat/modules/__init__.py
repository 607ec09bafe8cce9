"""
Módulos de simulação do coopheat
"""
