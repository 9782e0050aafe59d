(>= (plus 0 (var y)) (var y))
(>= (plus (+ (var x) 1) (var y)) (+ 1 (plus (var x) (var y))))
