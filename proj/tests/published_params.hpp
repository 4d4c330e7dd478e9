#pragma once

// Published fitted parameters (T, c, mu) per country, year and table kind,
// used to generate synthetic tables whose fits must round-trip.

#include <array>
#include <string_view>

#include "qsfit/ingest.hpp"
#include "qsfit/models.hpp"

namespace qsfit::test {

struct PublishedRow {
  std::string_view country;
  int year;
  TableKind kind;
  IncomeBasis basis;
  ModelParams params;
};

inline constexpr std::array<PublishedRow, 100> kPublishedRows = {{
    {"Finland", 1987, TableKind::UpperLimit, IncomeBasis::Net, {0.2344, 10.08, 4.588}},
    {"Finland", 1988, TableKind::UpperLimit, IncomeBasis::Net, {0.2461, 10.11, 4.609}},
    {"Finland", 1989, TableKind::UpperLimit, IncomeBasis::Net, {0.2472, 10.17, 4.602}},
    {"Finland", 1990, TableKind::UpperLimit, IncomeBasis::Net, {0.2573, 10.21, 4.633}},
    {"Finland", 1991, TableKind::UpperLimit, IncomeBasis::Net, {0.2516, 10.22, 4.632}},
    {"Finland", 1992, TableKind::UpperLimit, IncomeBasis::Net, {0.2501, 10.16, 4.645}},
    {"Finland", 1993, TableKind::UpperLimit, IncomeBasis::Net, {0.276, 10.14, 4.692}},
    {"Finland", 1994, TableKind::UpperLimit, IncomeBasis::Net, {0.2906, 10.15, 4.725}},
    {"Finland", 1995, TableKind::UpperLimit, IncomeBasis::Net, {0.2886, 10.18, 4.702}},
    {"Finland", 1996, TableKind::UpperLimit, IncomeBasis::Net, {0.2881, 10.21, 4.671}},
    {"Finland", 1997, TableKind::UpperLimit, IncomeBasis::Net, {0.3029, 10.27, 4.674}},
    {"Finland", 1998, TableKind::UpperLimit, IncomeBasis::Net, {0.2967, 10.31, 4.636}},
    {"Finland", 1999, TableKind::UpperLimit, IncomeBasis::Net, {0.2992, 10.34, 4.64}},
    {"Finland", 2000, TableKind::UpperLimit, IncomeBasis::Net, {0.3133, 10.37, 4.65}},
    {"Finland", 2001, TableKind::UpperLimit, IncomeBasis::Net, {0.3018, 10.39, 4.63}},
    {"Finland", 2002, TableKind::UpperLimit, IncomeBasis::Net, {0.3028, 10.42, 4.633}},
    {"Finland", 2003, TableKind::UpperLimit, IncomeBasis::Net, {0.3106, 10.45, 4.643}},
    {"Finland", 2004, TableKind::UpperLimit, IncomeBasis::Net, {0.3083, 10.5, 4.625}},
    {"Finland", 2005, TableKind::UpperLimit, IncomeBasis::Net, {0.3117, 10.53, 4.631}},
    {"Finland", 2006, TableKind::UpperLimit, IncomeBasis::Net, {0.3191, 10.55, 4.633}},
    {"Finland", 2007, TableKind::UpperLimit, IncomeBasis::Net, {0.3283, 10.58, 4.642}},
    {"Finland", 2008, TableKind::UpperLimit, IncomeBasis::Net, {0.3074, 10.56, 4.621}},
    {"Finland", 2009, TableKind::UpperLimit, IncomeBasis::Net, {0.3036, 10.59, 4.618}},
    {"Finland", 1987, TableKind::MeanIncome, IncomeBasis::Net, {0.361, 10.22, 4.827}},
    {"Finland", 1988, TableKind::MeanIncome, IncomeBasis::Net, {0.3893, 10.26, 4.874}},
    {"Finland", 1989, TableKind::MeanIncome, IncomeBasis::Net, {0.4048, 10.32, 4.899}},
    {"Finland", 1990, TableKind::MeanIncome, IncomeBasis::Net, {0.4007, 10.36, 4.9}},
    {"Finland", 1991, TableKind::MeanIncome, IncomeBasis::Net, {0.3993, 10.37, 4.902}},
    {"Finland", 1992, TableKind::MeanIncome, IncomeBasis::Net, {0.413, 10.31, 4.955}},
    {"Finland", 1993, TableKind::MeanIncome, IncomeBasis::Net, {0.477, 10.31, 5.065}},
    {"Finland", 1994, TableKind::MeanIncome, IncomeBasis::Net, {0.4762, 10.31, 5.064}},
    {"Finland", 1995, TableKind::MeanIncome, IncomeBasis::Net, {0.4989, 10.34, 5.09}},
    {"Finland", 1996, TableKind::MeanIncome, IncomeBasis::Net, {0.5332, 10.35, 5.205}},
    {"Finland", 1997, TableKind::MeanIncome, IncomeBasis::Net, {0.5624, 10.45, 5.14}},
    {"Finland", 1998, TableKind::MeanIncome, IncomeBasis::Net, {0.5893, 10.5, 5.147}},
    {"Finland", 1999, TableKind::MeanIncome, IncomeBasis::Net, {0.6739, 10.54, 5.314}},
    {"Finland", 2000, TableKind::MeanIncome, IncomeBasis::Net, {0.7052, 10.56, 5.349}},
    {"Finland", 2001, TableKind::MeanIncome, IncomeBasis::Net, {0.6181, 10.6, 5.159}},
    {"Finland", 2002, TableKind::MeanIncome, IncomeBasis::Net, {0.6066, 10.63, 5.135}},
    {"Finland", 2003, TableKind::MeanIncome, IncomeBasis::Net, {0.6282, 10.65, 5.175}},
    {"Finland", 2004, TableKind::MeanIncome, IncomeBasis::Net, {0.6489, 10.71, 5.187}},
    {"Finland", 2005, TableKind::MeanIncome, IncomeBasis::Net, {0.6543, 10.75, 5.196}},
    {"Finland", 2006, TableKind::MeanIncome, IncomeBasis::Net, {0.6734, 10.77, 5.212}},
    {"Finland", 2007, TableKind::MeanIncome, IncomeBasis::Net, {0.7062, 10.8, 5.247}},
    {"Finland", 2008, TableKind::MeanIncome, IncomeBasis::Net, {0.6354, 10.79, 5.135}},
    {"Finland", 2009, TableKind::MeanIncome, IncomeBasis::Net, {0.5873, 10.81, 5.066}},
    {"France", 2002, TableKind::UpperLimit, IncomeBasis::Net, {0.3946, 10.4, 4.734}},
    {"France", 2003, TableKind::UpperLimit, IncomeBasis::Net, {0.3835, 10.39, 4.721}},
    {"France", 2004, TableKind::UpperLimit, IncomeBasis::Net, {0.3745, 10.38, 4.711}},
    {"France", 2005, TableKind::UpperLimit, IncomeBasis::Net, {0.3778, 10.39, 4.712}},
    {"France", 2006, TableKind::UpperLimit, IncomeBasis::Net, {0.3906, 10.42, 4.73}},
    {"France", 2007, TableKind::UpperLimit, IncomeBasis::Net, {0.3824, 10.44, 4.713}},
    {"France", 2008, TableKind::UpperLimit, IncomeBasis::Net, {0.3901, 10.45, 4.746}},
    {"France", 2009, TableKind::UpperLimit, IncomeBasis::Net, {0.387, 10.46, 4.716}},
    {"France", 2003, TableKind::MeanIncome, IncomeBasis::Net, {0.6644, 10.59, 5.134}},
    {"France", 2004, TableKind::MeanIncome, IncomeBasis::Net, {0.6793, 10.58, 5.17}},
    {"France", 2005, TableKind::MeanIncome, IncomeBasis::Net, {0.673, 10.62, 5.121}},
    {"France", 2006, TableKind::MeanIncome, IncomeBasis::Net, {0.7019, 10.64, 5.165}},
    {"France", 2007, TableKind::MeanIncome, IncomeBasis::Net, {0.6904, 10.66, 5.144}},
    {"France", 2008, TableKind::MeanIncome, IncomeBasis::Net, {0.7074, 10.67, 5.185}},
    {"France", 2009, TableKind::MeanIncome, IncomeBasis::Net, {0.6796, 10.69, 5.112}},
    {"Italy", 2000, TableKind::UpperLimit, IncomeBasis::Net, {0.4358, 10.77, 4.566}},
    {"Italy", 2002, TableKind::UpperLimit, IncomeBasis::Net, {0.4421, 10.84, 4.573}},
    {"Italy", 2004, TableKind::UpperLimit, IncomeBasis::Net, {0.4607, 10.88, 4.623}},
    {"Italy", 2006, TableKind::UpperLimit, IncomeBasis::Net, {0.4254, 10.93, 4.59}},
    {"Italy", 2008, TableKind::UpperLimit, IncomeBasis::Net, {0.4616, 10.98, 4.616}},
    {"Italy", 2002, TableKind::MeanIncome, IncomeBasis::Net, {0.6966, 11.1, 4.839}},
    {"Italy", 2004, TableKind::MeanIncome, IncomeBasis::Net, {0.7323, 11.13, 4.924}},
    {"Italy", 2006, TableKind::MeanIncome, IncomeBasis::Net, {0.7266, 11.19, 4.938}},
    {"Italy", 2008, TableKind::MeanIncome, IncomeBasis::Net, {0.7111, 11.23, 4.886}},
    {"Romania", 2005, TableKind::MeanIncome, IncomeBasis::Net, {0.7977, 7.581, 5.722}},
    {"Romania", 2006, TableKind::MeanIncome, IncomeBasis::Net, {0.7926, 7.787, 5.547}},
    {"Romania", 2007, TableKind::MeanIncome, IncomeBasis::Net, {0.7419, 7.991, 5.461}},
    {"Romania", 2008, TableKind::MeanIncome, IncomeBasis::Net, {0.6739, 8.228, 5.355}},
    {"Romania", 2009, TableKind::MeanIncome, IncomeBasis::Net, {0.6382, 8.274, 5.385}},
    {"Romania", 2010, TableKind::MeanIncome, IncomeBasis::Net, {0.6245, 8.227, 5.468}},
    {"Mexico", 2000, TableKind::MeanIncome, IncomeBasis::Net, {1.311, 9.33, 5.102}},
    {"Mexico", 2002, TableKind::MeanIncome, IncomeBasis::Net, {1.241, 9.267, 5.088}},
    {"Mexico", 2004, TableKind::MeanIncome, IncomeBasis::Net, {1.219, 9.146, 5.076}},
    {"Mexico", 2005, TableKind::MeanIncome, IncomeBasis::Net, {1.246, 9.227, 5.094}},
    {"Mexico", 2006, TableKind::MeanIncome, IncomeBasis::Net, {1.25, 9.258, 5.141}},
    {"Mexico", 2008, TableKind::MeanIncome, IncomeBasis::Net, {1.228, 9.257, 5.086}},
    {"France", 2003, TableKind::MeanIncome, IncomeBasis::Gross, {0.3959, 10.47, 4.577}},
    {"France", 2004, TableKind::MeanIncome, IncomeBasis::Gross, {0.3924, 10.45, 4.582}},
    {"France", 2005, TableKind::MeanIncome, IncomeBasis::Gross, {0.3966, 10.47, 4.585}},
    {"France", 2006, TableKind::MeanIncome, IncomeBasis::Gross, {0.4026, 10.49, 4.592}},
    {"France", 2007, TableKind::MeanIncome, IncomeBasis::Gross, {0.3931, 10.5, 4.578}},
    {"France", 2008, TableKind::MeanIncome, IncomeBasis::Gross, {0.4022, 10.52, 4.599}},
    {"France", 2009, TableKind::MeanIncome, IncomeBasis::Gross, {0.3948, 10.53, 4.578}},
    {"France", 2002, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4372, 10.37, 4.871}},
    {"France", 2003, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4315, 10.35, 4.88}},
    {"France", 2004, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4064, 10.34, 4.839}},
    {"France", 2005, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4151, 10.36, 4.842}},
    {"France", 2006, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4343, 10.41, 4.854}},
    {"France", 2007, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4247, 10.41, 4.846}},
    {"France", 2008, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4355, 10.42, 4.88}},
    {"France", 2009, TableKind::MeanIncome, IncomeBasis::Inactive, {0.4146, 10.43, 4.824}},
    {"Hong Kong", 1991, TableKind::MedianMonthly, IncomeBasis::Unspecified, {0.6161, 10.22, 4.654}},
    {"Hong Kong", 1996, TableKind::MedianMonthly, IncomeBasis::Unspecified, {0.615, 10.79, 4.638}},
    {"Hong Kong", 2001, TableKind::MedianMonthly, IncomeBasis::Unspecified, {0.6188, 10.92, 4.587}},
}};

}  // namespace qsfit::test
