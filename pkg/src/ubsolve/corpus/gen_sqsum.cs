(>= (sq (var x)) (* (var x) (var x)))
(>= (q (var x) (var y)) (+ (sq (var x)) (sq (var y))))
(>= (* 2 (q (var x) (var y))) (+ (q (var x) (var y)) (var x)))
