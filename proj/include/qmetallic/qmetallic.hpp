#pragma once

#include "bigint.hpp"
#include "error.hpp"
#include "polynomial.hpp"
#include "series.hpp"
#include "qnum.hpp"
#include "metallic.hpp"
#include "mpcomplex.hpp"
#include "asymptotics.hpp"
#include "identities.hpp"
#include "rna.hpp"
#include "logbehaviour.hpp"
#include "io.hpp"
#include "cache.hpp"
#include "manifest.hpp"
#include "verify.hpp"
#include "golden.hpp"
