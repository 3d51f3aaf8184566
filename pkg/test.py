#!/usr/bin/env python3
import unittest

from test.test_core import *
from test.test_cholparser import *
from test.test_choldownload import *
from test.test_sat import *
from test.test_cc import *
from test.test_modelcheck import *
from test.test_report import *
from test.test_hlbe import *
from test.test_pe import *
from test.test_bce import *
from test.test_qle import *
from test.test_hoprep import *
from test.test_cli import *
from test.test_properties import *

unittest.main()
