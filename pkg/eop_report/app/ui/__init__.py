# UI module: figures, tables, console
