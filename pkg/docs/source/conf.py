import datetime
import doctest

import twp

# -- Project information -----------------------------------------------------
#

project = "twp"
author = "twp developers"
copyright = "{}, {}".format(datetime.datetime.now().year, author)

version = twp.__version__
release = twp.__version__

# -- General configuration ---------------------------------------------------
#

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
    'sphinx.ext.viewcode',
    'sphinx_copybutton',
]

autosummary_generate = True

source_suffix = '.rst'
master_doc = 'index'

doctest_default_flags = doctest.NORMALIZE_WHITESPACE
autodoc_member_order = 'bysource'

add_module_names = False

napoleon_custom_sections = [("Shape", "params_style"),
                            ("Shapes", "params_style")]

# -- Options for intersphinx -------------------------------------------------
#

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
    'pd': ('https://pandas.pydata.org/docs/', None),
}

# -- Theme options -----------------------------------------------------------
#

html_title = "Two-weight Poisson"
html_theme = 'furo'
language = "en"

pygments_style = "tango"
pygments_dark_style = "material"
