#ifndef CATFLAT_FORM_IO_HPP
#define CATFLAT_FORM_IO_HPP

#include <iosfwd>
#include <string>

#include "catflat/form.hpp"

namespace catflat {

/*
 * Form files are JSON with exact fraction coefficients:
 *
 *   {
 *     "nvars": 3,
 *     "degree": 4,
 *     "terms": [
 *       {"exponents": [4, 0, 0], "coeff": "1"},
 *       {"exponents": [2, 1, 1], "coeff": "-3/2"}
 *     ]
 *   }
 *
 * Coefficients are canonical "p" or "p/q" strings, never decimals. Writing is
 * bit-exact and deterministic: terms appear in grlex order, so
 * read(write(f)) == f and write(read(s)) is a canonical form of s.
 */

QForm read_form(std::istream& in);
QForm read_form_file(const std::string& path);

std::string write_form(const QForm& f);
void write_form_file(const std::string& path, const QForm& f);

} // namespace catflat

#endif
