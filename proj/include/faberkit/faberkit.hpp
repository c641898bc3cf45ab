#ifndef FABERKIT_FABERKIT_HPP
#define FABERKIT_FABERKIT_HPP

#include <faberkit/analysis.hpp>
#include <faberkit/coeffseq.hpp>
#include <faberkit/domaincfg.hpp>
#include <faberkit/error.hpp>
#include <faberkit/faber.hpp>
#include <faberkit/grunsky.hpp>
#include <faberkit/io.hpp>
#include <faberkit/quad.hpp>
#include <faberkit/series.hpp>
#include <faberkit/types.hpp>

#endif
