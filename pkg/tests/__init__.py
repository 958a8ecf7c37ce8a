# Test suite for SGP API

