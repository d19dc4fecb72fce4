#pragma once

#define QUADSPEC_VERSION "0.1.0"
