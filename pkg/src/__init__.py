# Possib package
