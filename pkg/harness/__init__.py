# Expression parser, catalogs, reports and the theorem suite.
