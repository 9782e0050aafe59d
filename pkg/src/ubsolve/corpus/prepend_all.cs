; sized-type constraints for prependAll xs ys = map (append xs) ys
(>= (f1 0 (var x)) (var x))
(>= (f1 (+ (var x) 1) (var y))
    (+ (f78 (var y) (var x)) 1))
(>= (f2 (var x) (var y) (var z))
    (f5 (f73 (var x)) (f75 (var y)) (f74 (var z))))
(>= (f3 (var x) (var y) (var z))
    (f6 (f73 (var x)) (f75 (var y)) (f74 (var z))))
(>= (f4 (var x) (f73 (var y)))
    (f1 (f71 (var y)) (f72 (var x))))
(>= (f4 (var x) (f82 (var y)))
    (f4 (f81 (var x)) (var y)))
(>= (f5 (var x) (var y) (+ (var z) 1))
    (f80 (var x) (var y) (var z) (var w)))
(>= (f5 (var x) (var y) 0) (f86))
(>= (f6 (var x) (var y) 0) 0)
(>= (f6 (var x) (var y) (+ (var z) 1))
    (+ (f85 (var x) (var y) (var z) (var w)) 1))
(>= (f71 (var x)) (var x))
(>= (f72 (var x)) (var x))
(>= (f74 (var x)) (var x))
(>= (f75 (var x)) (var x))
(>= (f76 (var x)) (var x))
(>= (f77 (var x)) (var x))
(>= (f78 (var x) (var y))
    (f1 (f76 (var y)) (f77 (var x))))
(>= (f79 (var x)) (var x))
(>= (f80 (var w) (var x) (var y) (var z))
    (f4 (f79 (var x)) (var w)))
(>= (f80 (var w) (var x) (var y) (var z))
    (f5 (f82 (var w)) (f84 (var x)) (f83 (var y))))
(>= (f81 (var x)) (var x))
(>= (f83 (var x)) (var x))
(>= (f84 (var x)) (var x))
(>= (f85 (var w) (var x) (var y) (var z))
    (f6 (f82 (var w)) (f84 (var x)) (f83 (var y))))
