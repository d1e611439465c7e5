#!/usr/bin/env python

############################################################################
#                                                                          #
# Copyright (c) 2026 The roomaware authors                                 #
#                                                                          #
# Licensed under the Apache License, Version 2.0 (the "License");          #
# you may not use this file except in compliance with the License.         #
# You may obtain a copy of the License at                                  #
#                                                                          #
#  http://www.apache.org/licenses/LICENSE-2.0                              #
#                                                                          #
# Unless required by applicable law or agreed to in writing, software      #
# distributed under the License is distributed on an "AS IS" BASIS,        #
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. #
# See the License for the specific language governing permissions and      #
# limitations under the License.                                           #
#                                                                          #
############################################################################

from __future__ import print_function

from setuptools import setup, find_packages
from os.path import exists
import os
from datetime import datetime
from subprocess import check_output, check_call, CalledProcessError
from io import open
import re

def dirty():
	for extra in ([], ['--cached'],):
		cmd = ['git', 'diff-index', '--quiet', 'HEAD'] + extra
		try:
			check_call(cmd)
		except CalledProcessError as e:
			if e.returncode == 1:
				return '.dirty'
			else:
				raise
	return ''

with open('README.md', 'r', encoding='utf-8') as fh:
	long_description = fh.read()

if exists('PKG-INFO'):
	with open('PKG-INFO', 'r', encoding='utf-8') as fh:
		for line in fh:
			if line.startswith('Version: '):
				version = line.strip().split()[1]
				break
else:
	version = datetime.utcnow().strftime('%Y.%m.%d')
	env_version = os.environ.get('ROOMAWARE_BUILD_VERSION')
	if env_version:
		assert re.match(r'20\d\d\.\d\d\.\d\d(\.dev\d+)?$', env_version)
		version = env_version
	else:
		try:
			commit = check_output(['git', 'rev-parse', 'HEAD']).strip()[:10].decode('ascii')
			version = "%s.dev1+%s%s" % (version, commit, dirty(),)
		except (OSError, CalledProcessError):
			version = "%s.dev1" % (version,)
	version = version.replace('.0', '.')
	with open('roomaware/version.txt', 'w') as fh:
		fh.write(version + '\n')

setup(
	name="roomaware",
	version=version,
	packages=find_packages(),

	entry_points={
		'console_scripts': [
			'ra = roomaware.shell:main',
		],
	},

	install_requires=[
		'setproctitle>=1.1.8', # not actually required
		'numpy>=1.17',
		'scipy>=1.7',
	],
	python_requires=">=3.7, <4",

	package_data={
		'': ['*.txt'],
	},

	description="Room awareness for robots on symmetric fields: a colour histogram background model that tells a pose from its reflection.",
	long_description=long_description,
	long_description_content_type="text/markdown",

	classifiers=[
		"Development Status :: 3 - Alpha",
		"Environment :: Console",
		"Intended Audience :: Science/Research",
		"License :: OSI Approved :: Apache Software License",
		"Operating System :: POSIX",
		"Programming Language :: Python :: 3",
		"Topic :: Scientific/Engineering",
	],
)
