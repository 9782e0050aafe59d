(>= (d (var x)) (+ (var x) (var x)))
(>= (h (var x)) (+ (d (var x)) 1))
