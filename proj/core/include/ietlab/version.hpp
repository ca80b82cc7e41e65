#pragma once

#define IETLAB_VERSION "1.0.0"
