#include <string_view>

namespace casim::grid::detail {

// IEEE RTS-79 bus data, aggregated to one generating unit per generator bus.
// Generation sums to 3405 MW, peak demand to 2850 MW across 17 load buses.
extern const std::string_view kRts79BusCsv =
    "id,type,gen_mw,demand_mw\n"
    "1,generator,192,108\n"
    "2,generator,192,97\n"
    "3,load,0,180\n"
    "4,load,0,74\n"
    "5,load,0,71\n"
    "6,load,0,136\n"
    "7,generator,300,125\n"
    "8,load,0,171\n"
    "9,load,0,175\n"
    "10,load,0,195\n"
    "11,junction,0,0\n"
    "12,junction,0,0\n"
    "13,generator,591,265\n"
    "14,load,0,194\n"
    "15,generator,215,317\n"
    "16,generator,155,100\n"
    "17,junction,0,0\n"
    "18,generator,400,333\n"
    "19,load,0,181\n"
    "20,load,0,128\n"
    "21,generator,400,0\n"
    "22,generator,300,0\n"
    "23,generator,660,0\n"
    "24,junction,0,0\n";

// RTS-79 branch list with continuous ratings: 175 MVA for the 138 kV level,
// 400 MVA for the five transformers, 500 MVA for the 230 kV level.
extern const std::string_view kRts79LineCsv =
    "id,from,to,capacity_mw\n"
    "1,1,2,175\n"
    "2,1,3,175\n"
    "3,1,5,175\n"
    "4,2,4,175\n"
    "5,2,6,175\n"
    "6,3,9,175\n"
    "7,3,24,400\n"
    "8,4,9,175\n"
    "9,5,10,175\n"
    "10,6,10,175\n"
    "11,7,8,175\n"
    "12,8,9,175\n"
    "13,8,10,175\n"
    "14,9,11,400\n"
    "15,9,12,400\n"
    "16,10,11,400\n"
    "17,10,12,400\n"
    "18,11,13,500\n"
    "19,11,14,500\n"
    "20,12,13,500\n"
    "21,12,23,500\n"
    "22,13,23,500\n"
    "23,14,16,500\n"
    "24,15,16,500\n"
    "25,15,21,500\n"
    "26,15,21,500\n"
    "27,15,24,500\n"
    "28,16,17,500\n"
    "29,16,19,500\n"
    "30,17,18,500\n"
    "31,17,22,500\n"
    "32,18,21,500\n"
    "33,18,21,500\n"
    "34,19,20,500\n"
    "35,19,20,500\n"
    "36,20,23,500\n"
    "37,20,23,500\n"
    "38,21,22,500\n";

}  // namespace casim::grid::detail
