"""Utility modules"""
from . import data_utils
from . import json_utils
from . import logging_utils
from . import parsing_utils
