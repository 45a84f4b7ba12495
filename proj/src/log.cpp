#include "qqs/log.hpp"

#include <iostream>
#include <mutex>
#include <string>
#include <utility>

namespace qqs {
namespace {

std::mutex g_sink_mutex;

WarningSink& sink() {
  static WarningSink s = [](std::string_view msg) { std::cerr << "warning: " << msg << '\n'; };
  return s;
}

}  // namespace

WarningSink set_warning_sink(WarningSink s) {
  std::lock_guard lock(g_sink_mutex);
  return std::exchange(sink(), std::move(s));
}

void log_warning(std::string_view message) {
  std::lock_guard lock(g_sink_mutex);
  if (sink()) sink()(message);
}

}  // namespace qqs
