# Ideals and ideal lattices of finite rings.
