// ado.hpp - everything in one include.

#ifndef ADO_ADO_HPP
#define ADO_ADO_HPP

#include "ado/graph.hpp"
#include "ado/shortest_paths.hpp"
#include "ado/sampling.hpp"
#include "ado/bunch_oracle.hpp"
#include "ado/param_oracle.hpp"
#include "ado/spanner.hpp"
#include "ado/hado.hpp"
#include "ado/constructions.hpp"
#include "ado/serialize.hpp"
#include "ado/audit.hpp"

#endif  // ADO_ADO_HPP
