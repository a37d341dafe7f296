# -*- coding: utf-8 -*-
# Licensed under a 3-clause BSD style license - see LICENSE.rst
#
# Documentation build configuration, layered on the global sphinx-astropy configuration.

import datetime
import os
import sys
from configparser import ConfigParser
from importlib import import_module

try:
    from sphinx_astropy.conf.v1 import *  # noqa
except ImportError:
    print("ERROR: the documentation requires the sphinx-astropy package to be installed")
    sys.exit(1)

# Project details come from setup.cfg
conf = ConfigParser()
conf.read([os.path.join(os.path.dirname(__file__), "..", "setup.cfg")])
setup_cfg = dict(conf.items("metadata"))

# -- General configuration ----------------------------------------------------

highlight_language = "python3"
exclude_patterns.append("_templates")
rst_epilog += """
"""

# -- Project information ------------------------------------------------------

project = setup_cfg["name"]
author = setup_cfg["author"]
copyright = "{0}, {1}".format(datetime.datetime.now().year, setup_cfg["author"])

import_module(setup_cfg["name"])
package = sys.modules[setup_cfg["name"]]

# The short X.Y version.
version = package.__version__.split("-", 1)[0]
# The full version, including alpha/beta/rc tags.
release = package.__version__

# -- Options for HTML output --------------------------------------------------

html_theme_options = {
    "logotext1": "pialgkit",  # white,  semi-bold
    "logotext2": "",  # orange, light
    "logotext3": ":docs",  # white,  light
}
html_title = "{0} v{1}".format(project, release)
htmlhelp_basename = project + "doc"

# -- Options for LaTeX and manual page output ---------------------------------

latex_documents = [("index", project + ".tex", project + " Documentation", author, "manual")]
man_pages = [("index", project.lower(), project + " Documentation", [author], 1)]

# Manual additions
extensions += ["sphinx_automodapi.automodapi"]

# Handle numpydoc format
extensions += ["sphinx.ext.napoleon"]
numpydoc_show_class_members = False
