# Modules over catalog rings.
