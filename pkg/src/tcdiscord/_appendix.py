"""Published element lists of the resonant sector Hamiltonian for N = 3, 4, 5.

Entries are 1-based ``(row, col)`` index pairs grouped by their value
``sqrt(K + m)``.  The lists are kept exactly as printed, including the
repeated symmetric pairs, so that transcription errors can be detected.
"""

RAW_LISTS = {
    3: (
        r"a_{1,2}=a_{1,3}=a_{1,5}=a_{2,1}=a_{3,1}=a_{5,1}=\sqrt{1+m},"
        r"a_{4,2}=a_{2,4}=a_{3,4}=a_{4,3}=a_{2,6}=a_{6,2}=a_{3,7}=a_{7,3}=a_{5,6}=a_{6,5}=a_{5,7}=a_{7,5}=\sqrt{2+m}"
        r"a_{4,8}=a_{8,4}=a_{6,8}=a_{8,6}=a_{7,8}=a_{8,7}=\sqrt{3+m}"
    ),
    4: (
        r"a_{1,2}=a_{1,3}=a_{1,5}=a_{2,1}=a_{3,1}=a_{5,1}=a_{1,9}=a_{9,1}==\sqrt{1+m},"
        r"a_{4,2}=a_{2,4}=a_{3,4}=a_{4,3}=a_{2,6}=a_{6,2}=a_{3,7}=a_{7,3}=a_{5,6}=a_{6,5}=a_{5,7}=a_{7,5}="
        r"a_{2,10}=a_{10,2}=a_{3,11}=a_{11,3}=a_{5,13}=a_{13,5}=a_{9,10}=a_{10,9}=a_{9,11}=a_{11,9}=\sqrt{2+m}"
        r"a_{4,8}=a_{8,4}=a_{6,8}=a_{8,6}=a_{7,8}=a_{8,7}=a_{4,12}=a_{12,4}=a_{6,14}=a_{14,6}=a_{7,15}=a_{15,7}="
        r"a_{12,10}=a_{10,12}=a_{12,11}=a_{11,12}=a_{14,10}=a_{10,14}=a_{15,11}=a_{11,15}=a_{14,13}="
        r"a_{13,14}=a_{15,13}=a_{13,15}=\sqrt{3+m}"
        r"a_{8,16}=a_{16,8}=a_{16,12}=a_{12,16}=a_{12,14}=a_{14,12}=a_{12,15}=a_{15,12}=\sqrt{4+m}"
    ),
    5: (
        r"a_{1,2}=a_{1,3}=a_{1,5}=a_{2,1}=a_{3,1}=a_{5,1}=a_{1,9}=a_{9,1}=a_{17,1}=a_{1,17}=\sqrt{1+m},"
        r"a_{4,2}=a_{2,4}=a_{3,4}=a_{4,3}=a_{2,6}=a_{6,2}=a_{3,7}=a_{7,3}=a_{5,6}=a_{6,5}=a_{5,7}=a_{7,5}="
        r"a_{2,10}=a_{10,2}=a_{3,11}=a_{11,3}=a_{5,13}=a_{13,5}=a_{9,10}=a_{10,9}=a_{9,11}=a_{11,9}=a_{18,2}="
        r"a_{2,18}=a_{19,3}=a_{3,19}=a_{21,5}=a_{5,21}=a_{25,9}=a_{9,25}=a_{25,17}=a_{17,25}=a_{17,18}="
        r"a_{18,17}=a_{17,19}=a_{19,17}=a_{21,17}=a_{17,21}=\sqrt{2+m}"
        r"a_{4,8}=a_{8,4}=a_{6,8}=a_{8,6}=a_{7,8}=a_{8,7}=a_{4,12}=a_{12,4}=a_{6,14}=a_{14,6}=a_{7,15}=a_{15,7}="
        r"a_{12,10}=a_{10,12}=a_{12,11}=a_{11,12}=a_{14,10}=a_{10,14}=a_{15,11}=a_{11,15}=a_{14,13}="
        r"a_{13,14}=a_{15,13}=a_{13,15}=a_{4,20}=a_{20,4}=a_{6,22}=a_{22,6}=a_{7,23}=a_{23,7}="
        r"a_{10,26}=a_{26,10}=a_{11,27}=a_{27,11}=a_{13,29}=a_{29,13}=a_{26,18}=a_{18,26}=a_{27,19}="
        r"a_{19,27}=a_{29,12}=a_{12,29}=a_{20,18}=a_{18,20}=a_{20,19}=a_{19,20}=a_{22,18}=a_{18,22}=a_{23,19}="
        r"a_{19,23}=a_{22,21}=a_{21,22}=a_{23,21}=a_{21,23}=a_{26,25}=a_{25,26}=a_{27,25}=a_{25,27}="
        r"a_{29,25}=a_{25,29}=\sqrt{3+m}"
        r"a_{8,16}=a_{16,8}=a_{16,12}=a_{12,16}=a_{12,14}=a_{14,12}=a_{12,15}=a_{15,12}=a_{24,8}=a_{8,24}=a_{28,12}="
        r"a_{12,28}=a_{30,14}=a_{14,30}=a_{31,15}=a_{15,31}=a_{28,20}=a_{20,28}=a_{22,30}=a_{30,22}=a_{31,23}="
        r"a_{23,31}=a_{24,20}=a_{20,24}=a_{24,22}=a_{22,24}=a_{24,23}=a_{23,24}=a_{28,26}=a_{26,28}=a_{28,27}="
        r"a_{27,28}=a_{30,26}=a_{26,30}=a_{31,27}=a_{27,31}=a_{30,29}=a_{29,30}=a_{31,29}=a_{29,31}=\sqrt{4+m}"
        r"a_{16,32}=a_{32,16}=a_{24,32}=a_{32,24}=a_{32,28}=a_{28,32}=a_{32,30}=a_{30,32}=a_{32,31}=a_{31,32}=\sqrt{5+m}"
    ),
}
