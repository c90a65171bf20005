# -*- coding: utf-8 -*-
#
# pulsal documentation build configuration file.

import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join("..", "..")))

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.todo",
    "sphinx.ext.coverage",
    "sphinx.ext.mathjax",
]

templates_path = ["_templates"]
source_suffix = ".rst"
master_doc = "index"

project = "pulsal"
copyright = "2026, The pulsal developers"
author = "The pulsal developers"
version = "0.1"
release = "0.1"

exclude_patterns = []
pygments_style = "sphinx"
todo_include_todos = True
autodoc_member_order = "bysource"

html_theme = "alabaster"
html_static_path = []
htmlhelp_basename = "pulsaldoc"

latex_documents = [
    (master_doc, "pulsal.tex", "pulsal Documentation", author, "manual"),
]
man_pages = [
    (master_doc, "pulsal", "pulsal Documentation", [author], 1),
]
